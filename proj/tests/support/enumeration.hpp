#pragma once

#include "dscore/frontend/ast.hpp"
#include "dscore/symbolic/engine.hpp"
#include "oracle.hpp"

#include <algorithm>
#include <optional>

namespace oracle {

struct EnumeratedVerdict {
    bool ret_equal = true;
    bool call_equal = true;
};

/// Verdict by running both functions on every sign-extended 8-bit argument tuple.
inline EnumeratedVerdict enumerate(const dscore::frontend::FunctionAst& ref, const dscore::frontend::FunctionAst& cand) {
    using namespace dscore::symbolic;
    const NameSet gt = ground_truth_calls(ref);
    const std::size_t arity = std::max(ref.params.size(), cand.params.size());
    const int width = std::min(ref.return_type.value_width(), cand.return_type.value_width());
    const std::uint64_t mask = width >= 64 ? ~0ULL : (1ULL << width) - 1;
    EnumeratedVerdict v;
    for_each_tuple(arity, byte_domain(), [&](const std::vector<std::uint64_t>& args) {
        const std::vector<std::uint64_t> ra(args.begin(), args.begin() + static_cast<long>(ref.params.size()));
        const std::vector<std::uint64_t> ca(args.begin(), args.begin() + static_cast<long>(cand.params.size()));
        const ConcreteResult r = concrete_eval(ref, ra, gt, EngineConfig{});
        const ConcreteResult c = concrete_eval(cand, ca, gt, EngineConfig{});
        if (r.ret.has_value() != c.ret.has_value()) {
            v.ret_equal = false;
        } else if (r.ret && ((*r.ret ^ *c.ret) & mask) != 0) {
            v.ret_equal = false;
        }
        for (const std::string& name : gt) {
            const auto rc = r.calls.count(name) ? r.calls.at(name) : 0;
            const auto cc = c.calls.count(name) ? c.calls.at(name) : 0;
            if (rc != cc) v.call_equal = false;
        }
    });
    return v;
}

}  // namespace oracle
