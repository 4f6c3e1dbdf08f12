#include "dscore/equivalence/checker.hpp"

#include "dscore/equivalence/smtlib.hpp"
#include "dscore/util/subprocess.hpp"

#include <algorithm>
#include <cstdlib>
#include <regex>

namespace dscore::equivalence {

using symbolic::ModelPath;
using symbolic::SymbolicModel;

const char* to_string(Tri t) {
    switch (t) {
        case Tri::True: return "true";
        case Tri::False: return "false";
        case Tri::Unknown: return "unknown";
    }
    return "?";
}

SolverConfig SolverConfig::from_env() {
    SolverConfig cfg;
    if (const char* smt = std::getenv("DSCORE_SMT"); smt && *smt) {
        auto words = util::split_command(smt);
        if (!words.empty()) cfg.command = std::move(words);
    }
    return cfg;
}

namespace {

int arity_of(const SymbolicModel& a, const SymbolicModel& b) {
    return static_cast<int>(std::max(a.param_types.size(), b.param_types.size()));
}

// Names and covering condition of a model's paths.
struct Encoded {
    std::vector<std::string> conds;
    std::vector<std::string> rets;
    std::string covered;
};

Encoded encode_paths(SmtWriter& w, const SymbolicModel& m, const std::string& prefix, bool with_returns) {
    std::vector<symbolic::SymValue> roots;
    for (const ModelPath& p : m.paths) {
        roots.push_back(p.condition);
        if (with_returns) roots.push_back(p.ret);
    }
    const std::vector<std::string> names = w.define(roots, prefix);
    Encoded e;
    const std::size_t stride = with_returns ? 2 : 1;
    for (std::size_t i = 0; i < m.paths.size(); ++i) {
        e.conds.push_back(names[i * stride]);
        if (with_returns) e.rets.push_back(names[i * stride + 1]);
    }
    if (e.conds.empty()) {
        e.covered = "false";
    } else {
        e.covered = "(or";
        for (const std::string& c : e.conds) e.covered += " (= " + c + " #b1)";
        e.covered += ")";
    }
    return e;
}

// ite(c1, v1, ite(c2, v2, ... vn)) over path conditions.
std::string select(const std::vector<std::string>& conds, const std::vector<std::string>& values) {
    std::string out = values.back();
    for (std::size_t i = values.size() - 1; i-- > 0;) {
        out = "(ite (= " + conds[i] + " #b1) " + values[i] + " " + out + ")";
    }
    return out;
}

std::string truncated(const std::string& term, int from, int to) {
    if (from == to) return term;
    return "((_ extract " + std::to_string(to - 1) + " 0) " + term + ")";
}

}  // namespace

std::string ret_query(const SymbolicModel& ref, const SymbolicModel& cand, bool restrict_to_bytes) {
    if (ref.returns_void() || cand.returns_void()) return {};
    if (ref.paths.empty() || cand.paths.empty()) return {};
    SmtWriter w(arity_of(ref, cand));
    const Encoded r = encode_paths(w, ref, "r_", true);
    const Encoded c = encode_paths(w, cand, "c_", true);
    const int width = std::min(ref.return_width(), cand.return_width());
    w.define_raw("ret_ref", SmtWriter::sort_of(width), truncated(select(r.conds, r.rets), ref.return_width(), width));
    w.define_raw("ret_cand", SmtWriter::sort_of(width), truncated(select(c.conds, c.rets), cand.return_width(), width));
    w.assert_true(r.covered);
    w.assert_true(c.covered);
    w.assert_true("(distinct ret_ref ret_cand)");
    if (restrict_to_bytes) w.restrict_to_bytes();
    return w.finish();
}

std::string call_query(const SymbolicModel& ref, const SymbolicModel& cand, bool restrict_to_bytes) {
    if (ref.ground_truth.empty() || ref.paths.empty() || cand.paths.empty()) return {};
    SmtWriter w(arity_of(ref, cand));
    const Encoded r = encode_paths(w, ref, "r_", false);
    const Encoded c = encode_paths(w, cand, "c_", false);
    auto counts = [](const SymbolicModel& m, const std::string& name) {
        std::vector<std::string> out;
        for (const ModelPath& p : m.paths) {
            auto it = p.calls.find(name);
            out.push_back(SmtWriter::literal(it == p.calls.end() ? 0 : static_cast<std::uint64_t>(it->second), 16));
        }
        return out;
    };
    std::string differs = "(or";
    int k = 0;
    for (const std::string& name : ref.ground_truth) {
        const std::string rn = "count_ref_" + std::to_string(k);
        const std::string cn = "count_cand_" + std::to_string(k);
        w.define_raw(rn, SmtWriter::sort_of(16), select(r.conds, counts(ref, name)));
        w.define_raw(cn, SmtWriter::sort_of(16), select(c.conds, counts(cand, name)));
        differs += " (distinct " + rn + " " + cn + ")";
        ++k;
    }
    differs += ")";
    w.assert_true(r.covered);
    w.assert_true(c.covered);
    w.assert_true(differs);
    if (restrict_to_bytes) w.restrict_to_bytes();
    return w.finish();
}

SolverAnswer run_solver(const std::string& script, int arity, const SolverConfig& cfg) {
    SolverAnswer out;
    const auto timeout = std::chrono::milliseconds(static_cast<long long>(cfg.timeout_seconds * 1000));
    const util::ProcessResult pr = util::run_process(cfg.command, script, timeout);
    if (!pr.spawned) {
        out.error = "solver could not be started: " + pr.spawn_error;
        return out;
    }
    if (pr.timed_out) {
        out.error = "solver timed out";
        return out;
    }
    const std::size_t start = pr.out.find_first_not_of(" \t\r\n");
    const std::size_t end = pr.out.find_first_of(" \t\r\n", start);
    const std::string first = start == std::string::npos ? "" : pr.out.substr(start, end - start);
    if (first == "unsat") {
        out.sat = Tri::False;
        return out;
    }
    if (first != "sat") {
        out.error = "solver answered '" + first + "'" + (pr.err.empty() ? "" : ": " + pr.err.substr(0, 200));
        return out;
    }
    out.sat = Tri::True;
    std::vector<std::uint64_t> args(static_cast<std::size_t>(arity), 0);
    static const std::regex value_re(R"(\(\s*arg(\d+)\s+#(x|b)([0-9a-fA-F]+)\s*\))");
    int found = 0;
    for (auto it = std::sregex_iterator(pr.out.begin(), pr.out.end(), value_re); it != std::sregex_iterator(); ++it) {
        const std::size_t idx = std::stoul((*it)[1].str());
        if (idx >= args.size()) continue;
        args[idx] = std::stoull((*it)[3].str(), nullptr, (*it)[2].str() == "x" ? 16 : 2);
        ++found;
    }
    if (found == arity) out.model = std::move(args);
    return out;
}

namespace {

bool complete(const SymbolicModel& ref, const SymbolicModel& cand, Verdict& v) {
    if (ref.explored_complete && cand.explored_complete) return true;
    v.detail = "exploration incomplete";
    return false;
}

Tri decide(const std::string& script, const SymbolicModel& ref, const SymbolicModel& cand, const SolverConfig& cfg,
           Verdict& v) {
    const SolverAnswer a = run_solver(script, arity_of(ref, cand), cfg);
    if (a.sat == Tri::Unknown) {
        v.detail = a.error;
        return Tri::Unknown;
    }
    if (a.sat == Tri::False) return Tri::True;
    if (!v.witness) v.witness = a.model;
    return Tri::False;
}

}  // namespace

Verdict check_ret(const SymbolicModel& ref, const SymbolicModel& cand, const SolverConfig& cfg) {
    Verdict v;
    if (!complete(ref, cand, v)) return v;
    if (ref.returns_void() && cand.returns_void()) {
        v.ret_equal = Tri::True;
        return v;
    }
    if (ref.returns_void() != cand.returns_void()) {
        v.ret_equal = Tri::False;
        v.witness = std::vector<std::uint64_t>(static_cast<std::size_t>(arity_of(ref, cand)), 0);
        return v;
    }
    const std::string q = ret_query(ref, cand, cfg.restrict_to_bytes);
    v.ret_equal = q.empty() ? Tri::True : decide(q, ref, cand, cfg, v);
    return v;
}

Verdict check_call(const SymbolicModel& ref, const SymbolicModel& cand, const SolverConfig& cfg) {
    Verdict v;
    if (!complete(ref, cand, v)) return v;
    const std::string q = call_query(ref, cand, cfg.restrict_to_bytes);
    v.call_equal = q.empty() ? Tri::True : decide(q, ref, cand, cfg, v);
    return v;
}

Verdict check(const SymbolicModel& ref, const SymbolicModel& cand, const SolverConfig& cfg) {
    Verdict v = check_ret(ref, cand, cfg);
    if (v.ret_equal != Tri::True) return v;
    const Verdict c = check_call(ref, cand, cfg);
    v.call_equal = c.call_equal;
    v.witness = c.witness;
    v.detail = c.detail;
    return v;
}

std::optional<double> semantic_score(const Verdict& v, const PenaltyConfig& penalties) {
    if (v.ret_equal == Tri::False) return penalties.ret_pen;
    if (v.ret_equal == Tri::Unknown || v.call_equal == Tri::Unknown) return std::nullopt;
    if (v.call_equal == Tri::False) return penalties.call_pen;
    return 0.0;
}

}  // namespace dscore::equivalence
