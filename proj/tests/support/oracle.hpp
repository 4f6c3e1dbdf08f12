#pragma once

#include "dscore/frontend/ast.hpp"
#include "dscore/symbolic/engine.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace oracle {

/// Sign-extended 8-bit values, -128..127.
inline std::vector<std::uint64_t> byte_domain(int stride = 1) {
    std::vector<std::uint64_t> out;
    for (int v = -128; v < 128; v += stride) out.push_back(static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
    return out;
}

/// Calls `fn` with every tuple of `arity` values drawn from `domain`.
inline void for_each_tuple(std::size_t arity, const std::vector<std::uint64_t>& domain,
                           const std::function<void(const std::vector<std::uint64_t>&)>& fn) {
    std::vector<std::uint64_t> args(arity, 0);
    std::vector<std::size_t> at(arity, 0);
    while (true) {
        for (std::size_t i = 0; i < arity; ++i) args[i] = domain[at[i]];
        fn(args);
        std::size_t i = 0;
        while (i < arity && ++at[i] == domain.size()) at[i++] = 0;
        if (i == arity) return;
    }
}

inline dscore::symbolic::CallCounts nonzero(const dscore::symbolic::CallCounts& c) {
    dscore::symbolic::CallCounts out;
    for (const auto& [k, v] : c) {
        if (v != 0) out[k] = v;
    }
    return out;
}

/// Empty string when the model and the interpreter agree on `args`,
/// otherwise a description of the first disagreement.
inline std::string disagreement(const dscore::frontend::FunctionAst& fn, const dscore::symbolic::SymbolicModel& model,
                                const std::vector<std::uint64_t>& args) {
    using namespace dscore::symbolic;
    const ConcreteResult want = concrete_eval(fn, args, model.ground_truth, EngineConfig{});
    Evaluator ev(args);
    const ModelPath* hit = nullptr;
    for (const ModelPath& p : model.paths) {
        if (ev.eval(p.condition) == 0) continue;
        if (hit) return "two path conditions hold";
        hit = &p;
    }
    if (!hit) return "no path condition holds";
    if (want.ret.has_value() != (hit->ret != nullptr)) return "void mismatch";
    if (want.ret && ev.eval(hit->ret) != *want.ret) {
        return "return " + std::to_string(ev.eval(hit->ret)) + " vs " + std::to_string(*want.ret);
    }
    if (nonzero(hit->calls) != nonzero(want.calls)) return "call counts differ";
    return {};
}

}  // namespace oracle
