#include "dscore/service/corpus.hpp"

#include "dscore/frontend/parser.hpp"

#include <fstream>
#include <set>

namespace dscore::service {

using nlohmann::json;

namespace {

const std::string& string_field(const json& j, const char* key, bool required) {
    static const std::string empty;
    if (!j.contains(key)) {
        if (required) throw std::invalid_argument(std::string("missing field '") + key + "'");
        return empty;
    }
    if (!j[key].is_string()) throw std::invalid_argument(std::string("field '") + key + "' must be a string");
    return j[key].get_ref<const std::string&>();
}

void fill_metrics(FunctionRecord& r) {
    try {
        frontend::FunctionAst ast = frontend::parse_function(r.original_decompiled);
        r.metrics = frontend::compute_metrics(ast, r.original_decompiled);
    } catch (const std::exception& e) {
        r.parse_error = e.what();
    }
}

}  // namespace

FunctionRecord record_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("record must be a JSON object");
    FunctionRecord r;
    r.id = string_field(j, "id", true);
    if (r.id.empty()) throw std::invalid_argument("field 'id' is empty");
    r.project = string_field(j, "project", false);
    r.original_decompiled = string_field(j, "original_decompiled", true);
    if (r.original_decompiled.empty()) throw std::invalid_argument("field 'original_decompiled' is empty");
    if (j.contains("candidates") && !j["candidates"].is_null()) {
        const json& c = j["candidates"];
        if (!c.is_object()) throw std::invalid_argument("field 'candidates' must be an object of tag -> source");
        for (const auto& [tag, src] : c.items()) {
            if (tag.empty() || tag == "original") throw std::invalid_argument("invalid candidate tag '" + tag + "'");
            if (!src.is_string()) throw std::invalid_argument("candidate '" + tag + "' must be a string");
            r.candidates[tag] = src.get<std::string>();
        }
    }
    r.provenance = j.value("provenance", json(nullptr));
    return r;
}

json to_json(const FunctionRecord& r) {
    json j = {{"id", r.id}, {"project", r.project}, {"original_decompiled", r.original_decompiled}};
    j["candidates"] = r.candidates;
    j["provenance"] = r.provenance;
    return j;
}

Corpus ingest(std::istream& in) {
    Corpus corpus;
    std::set<std::string> ids;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            FunctionRecord r = record_from_json(json::parse(line));
            if (!ids.insert(r.id).second) throw std::invalid_argument("duplicate id '" + r.id + "'");
            fill_metrics(r);
            corpus.records.push_back(std::move(r));
        } catch (const json::exception& e) {
            corpus.errors.push_back({number, std::string("invalid JSON: ") + e.what()});
        } catch (const std::invalid_argument& e) {
            corpus.errors.push_back({number, e.what()});
        }
    }
    return corpus;
}

Corpus ingest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    Corpus c = ingest(in);
    if (in.bad()) throw IoError("read error on " + path);
    return c;
}

FilterResult filter_dataset(const std::vector<FunctionRecord>& records, int min_lines, int min_cc) {
    FilterResult out;
    for (const FunctionRecord& r : records) {
        if (!r.metrics) {
            out.dropped.emplace_back(r.id, "unparseable: " + r.parse_error);
        } else if (r.metrics->effective_lines < min_lines) {
            out.dropped.emplace_back(r.id, "lines " + std::to_string(r.metrics->effective_lines) + " < " +
                                               std::to_string(min_lines));
        } else if (r.metrics->cyclomatic_complexity < min_cc) {
            out.dropped.emplace_back(r.id, "cyclomatic complexity " + std::to_string(r.metrics->cyclomatic_complexity) +
                                               " < " + std::to_string(min_cc));
        } else {
            out.kept.push_back(r);
        }
    }
    return out;
}

}  // namespace dscore::service
