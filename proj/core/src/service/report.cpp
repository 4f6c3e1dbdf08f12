#include "dscore/service/report.hpp"

#include "dscore/scoring/reward_group.hpp"
#include "dscore/service/json_writer.hpp"

#include <cstdio>
#include <mutex>

namespace dscore::service {

using nlohmann::json;

std::pair<std::string, double> best_of(const std::map<std::string, DScoreResult>& results) {
    std::pair<std::string, double> best{kOriginalTag, 0.0};
    for (const auto& [tag, r] : results) {
        if (r.value && *r.value > best.second) best = {tag, *r.value};
    }
    return best;
}

void summarize(ScoreReport& report) {
    report.summary.clear();
    std::map<std::string, double> sums;
    std::map<std::string, int> scorable;
    report.summary[kOriginalTag];
    for (const RecordReport& rec : report.records) {
        ++report.summary[rec.best_tag].best;
        for (const auto& [tag, r] : rec.results) {
            TagSummary& s = report.summary[tag];
            ++s.total;
            if (!r.value) {
                ++s.unscorable;
                continue;
            }
            if (*r.value > 0) ++s.improved;
            else if (*r.value < 0) ++s.regressed;
            else ++s.unchanged;
            sums[tag] += *r.value;
            ++scorable[tag];
        }
    }
    for (auto& [tag, s] : report.summary) {
        s.mean_delta = scorable[tag] ? sums[tag] / scorable[tag] : 0.0;
    }
}

ScoreReport score_batch(const std::vector<FunctionRecord>& records, const DScoreConfig& cfg, int jobs,
                        const std::function<void(std::size_t, std::size_t)>& progress) {
    struct Task {
        std::size_t record;
        std::string tag;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < records.size(); ++i) {
        for (const auto& [tag, src] : records[i].candidates) tasks.push_back({i, tag});
    }
    std::vector<DScoreResult> results(tasks.size());
    std::mutex progress_mutex;
    std::size_t done = 0;
    parallel_for(tasks.size(), jobs, [&](std::size_t k) {
        const FunctionRecord& rec = records[tasks[k].record];
        try {
            results[k] = score(rec.original_decompiled, rec.candidates.at(tasks[k].tag), cfg);
        } catch (const std::exception& e) {
            results[k].kind = ResultKind::Unscorable;
            results[k].diagnostics = {{"stage", "internal"}, {"reason", e.what()}};
        }
        if (progress) {
            std::lock_guard lock(progress_mutex);
            progress(++done, tasks.size());
        }
    });

    ScoreReport report;
    for (const FunctionRecord& r : records) report.records.push_back({r.id, {}, kOriginalTag, 0.0});
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        report.records[tasks[k].record].results[tasks[k].tag] = std::move(results[k]);
    }
    for (RecordReport& rec : report.records) std::tie(rec.best_tag, rec.best_score) = best_of(rec.results);
    summarize(report);
    return report;
}

json ScoreReport::to_json() const {
    json recs = json::array();
    for (const RecordReport& rec : records) {
        json res = json::object();
        for (const auto& [tag, r] : rec.results) res[tag] = r.to_json();
        recs.push_back({{"id", rec.id}, {"results", res}, {"best_tag", rec.best_tag}, {"best_score", rec.best_score}});
    }
    json sum = json::object();
    for (const auto& [tag, s] : summary) {
        sum[tag] = {{"total", s.total},         {"improved", s.improved},     {"regressed", s.regressed},
                    {"unchanged", s.unchanged}, {"unscorable", s.unscorable}, {"best", s.best},
                    {"mean_delta", s.mean_delta}};
    }
    return {{"records", recs}, {"summary", sum}};
}

ScoreReport ScoreReport::from_json(const json& j) {
    ScoreReport report;
    for (const json& rj : j.at("records")) {
        RecordReport rec;
        rec.id = rj.at("id").get<std::string>();
        for (const auto& [tag, resj] : rj.at("results").items()) {
            DScoreResult r;
            const auto kind = result_kind_from_string(resj.at("kind").get<std::string>());
            if (!kind) throw std::invalid_argument("unknown result kind in report");
            r.kind = *kind;
            if (!resj.at("value").is_null()) r.value = resj.at("value").get<double>();
            r.diagnostics = resj.value("diagnostics", json::object());
            rec.results[tag] = std::move(r);
        }
        std::tie(rec.best_tag, rec.best_score) = best_of(rec.results);
        report.records.push_back(std::move(rec));
    }
    summarize(report);
    return report;
}

std::string render_table(const ScoreReport& report) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-16s %6s %9s %10s %10s %11s %6s %12s\n", "tag", "total", "improved", "regressed",
                  "unchanged", "unscorable", "best", "mean_delta");
    out += line;
    for (const auto& [tag, s] : report.summary) {
        std::snprintf(line, sizeof line, "%-16s %6d %9d %10d %10d %11d %6d %12.4f\n", tag.c_str(), s.total, s.improved,
                      s.regressed, s.unchanged, s.unscorable, s.best, s.mean_delta);
        out += line;
    }
    std::snprintf(line, sizeof line, "records: %zu\n", report.records.size());
    out += line;
    return out;
}

}  // namespace dscore::service
