#pragma once

#include "dscore/frontend/ast.hpp"
#include "dscore/symbolic/expr.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dscore::symbolic {

using NameSet = std::set<std::string>;
/// Per-name call counts on one path. Names outside the ground truth are
/// accumulated under kOtherCalls.
using CallCounts = std::map<std::string, int>;

inline constexpr const char* kOtherCalls = "{other}";

struct EngineConfig {
    int unroll_bound = 32;          // visits of any one block along one path
    double timeout_seconds = 30.0;
    std::uint64_t external_return_value = 0;
    int max_paths = 256;

    /// Throws std::invalid_argument when a field is not positive.
    void validate() const;
};

enum class FailureKind : std::uint8_t { Timeout, Unsupported, PathExplosion };

const char* to_string(FailureKind kind);

class EngineFailure : public std::runtime_error {
public:
    EngineFailure(FailureKind kind, const std::string& what);
    [[nodiscard]] FailureKind kind() const { return kind_; }

private:
    FailureKind kind_;
};

struct ModelPath {
    std::vector<SymValue> atoms;  // conjuncts of the path condition
    SymValue condition = nullptr;
    SymValue ret = nullptr;       // nullptr for void functions
    CallCounts calls;
};

struct SymbolicModel {
    std::shared_ptr<ExprContext> ctx;
    std::vector<ModelPath> paths;
    bool explored_complete = true;
    frontend::CType return_type;
    std::vector<frontend::CType> param_types;
    NameSet ground_truth;

    [[nodiscard]] bool returns_void() const { return return_type.is_void(); }
    [[nodiscard]] int return_width() const { return return_type.value_width(); }
};

/// Depth-first symbolic execution. Non-pointer parameter i reads the shared
/// 64-bit input arg(i) truncated to its declared width; pointer parameters are
/// bound to fresh regions of a zero-initialised memory.
///
/// Throws EngineFailure. Pass `ctx` to build several models over one DAG.
SymbolicModel build_models(const frontend::FunctionAst& ast, const NameSet& ground_truth, const EngineConfig& cfg,
                           std::shared_ptr<ExprContext> ctx = nullptr);

/// Ground-truth name set of a reference function.
NameSet ground_truth_calls(const frontend::FunctionAst& reference);

/// Path index, condition text, return text and counts.
nlohmann::json to_json(const SymbolicModel& model);

struct ConcreteResult {
    std::optional<std::uint64_t> ret;  // masked to the return width; empty for void
    CallCounts calls;
};

/// Big-step interpreter with the same memory, argument and external-call
/// conventions as build_models. `args` holds one 64-bit value per parameter.
ConcreteResult concrete_eval(const frontend::FunctionAst& ast, const std::vector<std::uint64_t>& args,
                             const NameSet& ground_truth, const EngineConfig& cfg, std::uint64_t step_budget = 5'000'000);

}  // namespace dscore::symbolic
