#pragma once

#include "dscore/scoring/dscore.hpp"
#include "dscore/service/corpus.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace dscore::service {

inline constexpr const char* kOriginalTag = "original";

struct RecordReport {
    std::string id;
    std::map<std::string, DScoreResult> results;  // candidate tag -> result
    std::string best_tag = kOriginalTag;
    double best_score = 0.0;
};

struct TagSummary {
    int total = 0;
    int improved = 0;    // value > 0
    int regressed = 0;   // value < 0
    int unchanged = 0;   // value == 0
    int unscorable = 0;
    int best = 0;        // records where this tag was chosen
    double mean_delta = 0.0;  // mean value over scorable results (the original scores 0)
};

struct ScoreReport {
    std::vector<RecordReport> records;
    std::map<std::string, TagSummary> summary;  // includes "original" for best counts

    [[nodiscard]] nlohmann::json to_json() const;
    /// Rebuilds a report from to_json output; summaries are recomputed.
    static ScoreReport from_json(const nlohmann::json& j);
};

/// Highest-scoring tag; the original (score 0) wins ties, then the
/// lexicographically first tag. Unscorable results never win.
std::pair<std::string, double> best_of(const std::map<std::string, DScoreResult>& results);

/// Scores every candidate of every record against its original. Never aborts;
/// failures surface as Unscorable entries.
ScoreReport score_batch(const std::vector<FunctionRecord>& records, const DScoreConfig& cfg, int jobs = 0,
                        const std::function<void(std::size_t done, std::size_t total)>& progress = {});

/// Recomputes summary counts from the per-record results.
void summarize(ScoreReport& report);

/// Fixed-width text table, one row per tag.
std::string render_table(const ScoreReport& report);

}  // namespace dscore::service
