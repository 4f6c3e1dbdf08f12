#include "dscore/service/config.hpp"

#include "dscore/util/subprocess.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace dscore::service {

using nlohmann::json;

namespace {

std::vector<std::string> command_from(const json& j, const char* key) {
    std::vector<std::string> words;
    if (j.is_string()) {
        words = util::split_command(j.get<std::string>());
    } else if (j.is_array()) {
        words = j.get<std::vector<std::string>>();
    } else {
        throw ConfigError(std::string(key) + " must be a string or an array of strings");
    }
    if (words.empty()) throw ConfigError(std::string(key) + " is empty");
    return words;
}

PenaltyConfig penalties_from(const json& j) {
    PenaltyConfig p;
    if (j.is_array()) {
        if (j.size() != 3) throw ConfigError("penalties must have three entries: syn, ret, call");
        p = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
    } else if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (k != "syn" && k != "ret" && k != "call") throw ConfigError("unknown penalty '" + k + "'");
        }
        p.syn_pen = j.value("syn", p.syn_pen);
        p.ret_pen = j.value("ret", p.ret_pen);
        p.call_pen = j.value("call", p.call_pen);
    } else if (j.is_string()) {
        p = parse_penalties(j.get<std::string>());
    } else {
        throw ConfigError("penalties must be an object, an array or a string");
    }
    return p;
}

}  // namespace

PenaltyConfig parse_penalties(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(part, &used));
            if (part.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw ConfigError("bad penalty value '" + part + "'");
        }
    }
    if (v.size() != 3) throw ConfigError("penalties must be syn,ret,call");
    return {v[0], v[1], v[2]};
}

void ServiceConfig::validate() const {
    scoring.validate();
    group.validate();
    if (jobs < 0) throw ConfigError("jobs must be >= 0");
    if (port < 0 || port > 65535) throw ConfigError("port out of range");
}

ServiceConfig ServiceConfig::from_json(const json& j, ServiceConfig cfg) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> keys = {
        "compiler_cmd", "solver_cmd", "timeout_sem", "max_recompile_iters", "penalties", "gamma", "delta",
        "unroll_bound", "jobs", "max_paths", "external_return_value", "compile_timeout", "num_generations",
        "unscorable_reward", "std_floor", "readability", "host", "port", "verbose",
    };
    for (const auto& [k, v] : j.items()) {
        if (!keys.count(k)) throw ConfigError("unknown config key '" + k + "'");
    }
    try {
        DScoreConfig& s = cfg.scoring;
        if (j.contains("compiler_cmd")) s.harness.compiler = command_from(j["compiler_cmd"], "compiler_cmd");
        if (j.contains("solver_cmd")) s.solver.command = command_from(j["solver_cmd"], "solver_cmd");
        if (j.contains("timeout_sem")) {
            s.semantic_budget_seconds = j["timeout_sem"].get<double>();
            s.engine.timeout_seconds = s.semantic_budget_seconds;
            s.solver.timeout_seconds = s.semantic_budget_seconds;
        }
        if (j.contains("max_recompile_iters")) s.harness.max_iterations = j["max_recompile_iters"].get<int>();
        if (j.contains("compile_timeout")) s.harness.compile_timeout_seconds = j["compile_timeout"].get<double>();
        if (j.contains("penalties")) s.penalties = penalties_from(j["penalties"]);
        if (j.contains("readability")) {
            json r = j["readability"];
            s.readability = readability::ReadabilityConfig::from_json(r);
        }
        if (j.contains("gamma")) s.readability.gamma = j["gamma"].get<double>();
        if (j.contains("delta")) s.readability.delta = j["delta"].get<double>();
        if (j.contains("unroll_bound")) s.engine.unroll_bound = j["unroll_bound"].get<int>();
        if (j.contains("max_paths")) s.engine.max_paths = j["max_paths"].get<int>();
        if (j.contains("external_return_value")) s.engine.external_return_value = j["external_return_value"].get<std::uint64_t>();
        if (j.contains("verbose")) s.verbose = j["verbose"].get<bool>();
        if (j.contains("jobs")) {
            cfg.jobs = j["jobs"].get<int>();
            cfg.group.jobs = cfg.jobs;
        }
        if (j.contains("num_generations")) cfg.group.num_generations = j["num_generations"].get<int>();
        if (j.contains("unscorable_reward")) {
            if (j["unscorable_reward"].is_null()) cfg.group.unscorable_reward.reset();
            else cfg.group.unscorable_reward = j["unscorable_reward"].get<double>();
        }
        if (j.contains("std_floor")) cfg.group.std_floor = j["std_floor"].get<double>();
        if (j.contains("host")) cfg.host = j["host"].get<std::string>();
        if (j.contains("port")) cfg.port = j["port"].get<int>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

json ServiceConfig::to_json() const {
    const DScoreConfig& s = scoring;
    json r = s.readability.to_json();
    r.erase("gamma");
    r.erase("delta");
    return {
        {"compiler_cmd", s.harness.compiler},
        {"solver_cmd", s.solver.command},
        {"timeout_sem", s.semantic_budget_seconds},
        {"max_recompile_iters", s.harness.max_iterations},
        {"compile_timeout", s.harness.compile_timeout_seconds},
        {"penalties", {{"syn", s.penalties.syn_pen}, {"ret", s.penalties.ret_pen}, {"call", s.penalties.call_pen}}},
        {"gamma", s.readability.gamma},
        {"delta", s.readability.delta},
        {"unroll_bound", s.engine.unroll_bound},
        {"max_paths", s.engine.max_paths},
        {"external_return_value", s.engine.external_return_value},
        {"verbose", s.verbose},
        {"jobs", jobs},
        {"num_generations", group.num_generations},
        {"unscorable_reward", group.unscorable_reward ? json(*group.unscorable_reward) : json(nullptr)},
        {"std_floor", group.std_floor},
        {"readability", r},
        {"host", host},
        {"port", port},
    };
}

ServiceConfig load_config(const std::string& path, ServiceConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return ServiceConfig::from_json(j, std::move(base));
}

}  // namespace dscore::service
