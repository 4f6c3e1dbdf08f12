#pragma once

#include "dscore/scoring/dscore.hpp"
#include "dscore/scoring/reward_group.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace dscore::service {

/// Everything the CLI and the service read from a config file. Keys mirror the
/// command-line flags: compiler_cmd, solver_cmd, timeout_sem,
/// max_recompile_iters, penalties, gamma, delta, unroll_bound, jobs, plus
/// max_paths, external_return_value, compile_timeout, num_generations,
/// unscorable_reward, std_floor, readability, host and port.
struct ServiceConfig {
    DScoreConfig scoring = DScoreConfig::from_env();
    GroupConfig group;
    int jobs = 0;  // 0: hardware concurrency
    std::string host = "127.0.0.1";
    int port = 8765;

    /// Throws ConfigError.
    void validate() const;

    /// Applies the keys present in j over `base`. Unknown keys are rejected.
    static ServiceConfig from_json(const nlohmann::json& j, ServiceConfig base);
    static ServiceConfig from_json(const nlohmann::json& j) { return from_json(j, ServiceConfig{}); }
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Reads a JSON config file over `base`. Throws ConfigError.
ServiceConfig load_config(const std::string& path, ServiceConfig base = {});

/// "syn,ret,call" -> PenaltyConfig. Throws ConfigError.
PenaltyConfig parse_penalties(const std::string& text);

}  // namespace dscore::service
