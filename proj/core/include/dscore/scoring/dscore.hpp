#pragma once

#include "dscore/equivalence/checker.hpp"
#include "dscore/readability/readability.hpp"
#include "dscore/recompile/harness.hpp"
#include "dscore/scoring/penalties.hpp"
#include "dscore/symbolic/engine.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dscore {

enum class ResultKind : std::uint8_t { SyntaxFail, SemRetFail, SemCallFail, Pass, Unscorable };

const char* to_string(ResultKind kind);
std::optional<ResultKind> result_kind_from_string(std::string_view s);

struct DScoreResult {
    ResultKind kind = ResultKind::Unscorable;
    std::optional<double> value;  // empty only for Unscorable
    nlohmann::json diagnostics = nlohmann::json::object();

    [[nodiscard]] bool scorable() const { return value.has_value(); }
    [[nodiscard]] nlohmann::json to_json() const;
};

struct DScoreConfig {
    PenaltyConfig penalties;
    recompile::HarnessConfig harness;
    symbolic::EngineConfig engine;
    equivalence::SolverConfig solver;
    readability::ReadabilityConfig readability;
    double semantic_budget_seconds = 30.0;  // shared by symbolic execution and both solver queries
    bool verbose = false;                   // include models and SMT-level detail in diagnostics

    /// Defaults with DSCORE_CC and DSCORE_SMT applied.
    static DScoreConfig from_env();

    /// Throws ConfigError.
    void validate() const;
};

/// Syntax, then semantics against the reference's ground-truth call names,
/// then readability. Never throws for bad input; tool errors, timeouts and
/// unsupported code come back as Unscorable.
DScoreResult score(std::string_view reference, std::string_view candidate, const DScoreConfig& cfg);

}  // namespace dscore
