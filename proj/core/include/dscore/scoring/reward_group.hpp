#pragma once

#include "dscore/scoring/dscore.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dscore {

struct GroupConfig {
    int num_generations = 3;
    std::optional<double> unscorable_reward;  // empty: the configured ret_pen
    double std_floor = 1e-8;
    int jobs = 0;  // 0: hardware concurrency

    [[nodiscard]] double unscorable_value(const PenaltyConfig& p) const { return unscorable_reward.value_or(p.ret_pen); }
    /// Throws ConfigError.
    void validate() const;
};

struct RewardGroup {
    std::string reference_id;
    std::vector<double> rewards;
    std::vector<double> advantages;
    std::vector<bool> unscorable_mask;
    std::vector<DScoreResult> results;
};

/// (r - mean) / std with the population std; all zeros when std < std_floor.
std::vector<double> normalize(const std::vector<double>& rewards, double std_floor = 1e-8);

/// Scores every candidate against the reference, maps Unscorable to the
/// configured reward and normalizes. Throws std::invalid_argument when
/// candidates is empty.
RewardGroup score_group(std::string_view reference, const std::vector<std::string>& candidates, const DScoreConfig& cfg,
                        const GroupConfig& group = {});

/// Runs fn(i) for i in [0, n) on up to `jobs` threads (0: hardware concurrency).
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace dscore
