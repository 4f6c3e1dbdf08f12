#include "dscore/scoring/reward_group.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace dscore {

void GroupConfig::validate() const {
    if (num_generations < 1) throw ConfigError("num_generations must be >= 1");
    if (!(std_floor > 0)) throw ConfigError("std_floor must be > 0");
    if (unscorable_reward && !std::isfinite(*unscorable_reward)) throw ConfigError("unscorable_reward must be finite");
    if (jobs < 0) throw ConfigError("jobs must be >= 0");
}

std::vector<double> normalize(const std::vector<double>& rewards, double std_floor) {
    const double n = static_cast<double>(rewards.size());
    double mean = 0;
    for (double r : rewards) mean += r;
    mean /= n;
    double var = 0;
    for (double r : rewards) var += (r - mean) * (r - mean);
    const double sd = std::sqrt(var / n);
    std::vector<double> out(rewards.size(), 0.0);
    if (!(sd >= std_floor)) return out;
    for (std::size_t i = 0; i < rewards.size(); ++i) out[i] = (rewards[i] - mean) / sd;
    return out;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    std::size_t workers = jobs > 0 ? static_cast<std::size_t>(jobs) : std::max(1U, std::thread::hardware_concurrency());
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

RewardGroup score_group(std::string_view reference, const std::vector<std::string>& candidates, const DScoreConfig& cfg,
                        const GroupConfig& group) {
    if (candidates.empty()) throw std::invalid_argument("score_group: no candidates");
    RewardGroup g;
    g.results.resize(candidates.size());
    parallel_for(candidates.size(), group.jobs, [&](std::size_t i) { g.results[i] = score(reference, candidates[i], cfg); });
    for (const DScoreResult& r : g.results) {
        g.unscorable_mask.push_back(!r.scorable());
        g.rewards.push_back(r.value.value_or(group.unscorable_value(cfg.penalties)));
    }
    g.advantages = normalize(g.rewards, group.std_floor);
    return g;
}

}  // namespace dscore
