#pragma once

#include "dscore/scoring/penalties.hpp"
#include "dscore/symbolic/engine.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dscore::equivalence {

enum class Tri : std::uint8_t { True, False, Unknown };

const char* to_string(Tri t);

struct SolverConfig {
    std::vector<std::string> command = {"z3", "-in"};
    double timeout_seconds = 30.0;
    bool restrict_to_bytes = false;  // inputs limited to sign-extended 8-bit values

    /// Defaults with DSCORE_SMT applied when set.
    static SolverConfig from_env();
};

struct Verdict {
    Tri ret_equal = Tri::Unknown;
    Tri call_equal = Tri::Unknown;
    std::optional<std::vector<std::uint64_t>> witness;  // arguments exhibiting the first mismatch
    std::string detail;                                   // why a part is unknown
};

/// Raw solver answer.
struct SolverAnswer {
    Tri sat = Tri::Unknown;  // True = sat
    std::optional<std::vector<std::uint64_t>> model;
    std::string error;
};

SolverAnswer run_solver(const std::string& script, int arity, const SolverConfig& cfg);

/// Script asserting that both models cover the input and their returns differ
/// at the narrower return width. Empty when the returns are trivially related
/// (both void or exactly one void).
std::string ret_query(const symbolic::SymbolicModel& ref, const symbolic::SymbolicModel& cand, bool restrict_to_bytes);

/// Script asserting that some ground-truth name is called a different number of
/// times. Empty when the ground-truth set is empty.
std::string call_query(const symbolic::SymbolicModel& ref, const symbolic::SymbolicModel& cand, bool restrict_to_bytes);

/// Fills ret_equal (and witness on mismatch).
Verdict check_ret(const symbolic::SymbolicModel& ref, const symbolic::SymbolicModel& cand, const SolverConfig& cfg);
/// Fills call_equal (and witness on mismatch).
Verdict check_call(const symbolic::SymbolicModel& ref, const symbolic::SymbolicModel& cand, const SolverConfig& cfg);
/// check_ret, then check_call unless the returns already differ.
Verdict check(const symbolic::SymbolicModel& ref, const symbolic::SymbolicModel& cand, const SolverConfig& cfg);

/// ret_pen / call_pen / 0, or nullopt for Unscorable.
std::optional<double> semantic_score(const Verdict& v, const PenaltyConfig& penalties);

}  // namespace dscore::equivalence
