#include "dscore/scoring/dscore.hpp"

#include "dscore/frontend/parser.hpp"

#include <chrono>

namespace dscore {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

DScoreResult unscorable(const std::string& stage, const std::string& reason, json extra = json::object()) {
    DScoreResult r;
    r.kind = ResultKind::Unscorable;
    extra["stage"] = stage;
    extra["reason"] = reason;
    r.diagnostics = std::move(extra);
    return r;
}

json diagnostics_json(const std::vector<recompile::Diagnostic>& diags) {
    json out = json::array();
    for (const auto& d : diags) {
        out.push_back({{"line", d.line}, {"column", d.column}, {"severity", d.severity}, {"message", d.message}});
    }
    return out;
}

json actions_json(const std::vector<recompile::FixupAction>& actions) {
    json out = json::array();
    for (const auto& a : actions) out.push_back({{"kind", recompile::to_string(a.kind)}, {"payload", a.payload}});
    return out;
}

json replay(const frontend::FunctionAst& ref, const frontend::FunctionAst& cand, const symbolic::NameSet& gt,
            const std::vector<std::uint64_t>& args, const symbolic::EngineConfig& cfg) {
    auto one = [&](const frontend::FunctionAst& fn) -> json {
        std::vector<std::uint64_t> a(args.begin(), args.begin() + std::min(args.size(), fn.params.size()));
        a.resize(fn.params.size(), 0);
        const symbolic::ConcreteResult r = symbolic::concrete_eval(fn, a, gt, cfg);
        json j = {{"calls", r.calls}};
        j["ret"] = r.ret ? json(*r.ret) : json(nullptr);
        return j;
    };
    try {
        return {{"reference", one(ref)}, {"candidate", one(cand)}};
    } catch (const std::exception& e) {
        return {{"error", e.what()}};
    }
}

}  // namespace

const char* to_string(ResultKind kind) {
    switch (kind) {
        case ResultKind::SyntaxFail: return "syntax-fail";
        case ResultKind::SemRetFail: return "sem-ret-fail";
        case ResultKind::SemCallFail: return "sem-call-fail";
        case ResultKind::Pass: return "pass";
        case ResultKind::Unscorable: return "unscorable";
    }
    return "?";
}

std::optional<ResultKind> result_kind_from_string(std::string_view s) {
    for (ResultKind k : {ResultKind::SyntaxFail, ResultKind::SemRetFail, ResultKind::SemCallFail, ResultKind::Pass,
                         ResultKind::Unscorable}) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

json DScoreResult::to_json() const {
    json j = {{"kind", to_string(kind)}, {"diagnostics", diagnostics}};
    j["value"] = value ? json(*value) : json(nullptr);
    return j;
}

DScoreConfig DScoreConfig::from_env() {
    DScoreConfig cfg;
    cfg.harness = recompile::HarnessConfig::from_env();
    cfg.solver = equivalence::SolverConfig::from_env();
    return cfg;
}

void DScoreConfig::validate() const {
    validate_penalties(penalties);
    readability.validate();
    if (penalties.call_pen >= -(readability.gamma + readability.delta)) {
        throw ConfigError("call_pen >= readability infimum (-(gamma + delta))");
    }
    try {
        engine.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (harness.compiler.empty()) throw ConfigError("compiler command is empty");
    if (solver.command.empty()) throw ConfigError("solver command is empty");
    if (harness.max_iterations < 1) throw ConfigError("max_recompile_iters must be >= 1");
    if (!(semantic_budget_seconds > 0)) throw ConfigError("timeout_sem must be > 0");
    if (!(harness.compile_timeout_seconds > 0)) throw ConfigError("compile timeout must be > 0");
}

DScoreResult score(std::string_view reference, std::string_view candidate, const DScoreConfig& cfg) {
    // Syntax.
    const recompile::CompileOutcome compiled = recompile::recompile(candidate, cfg.harness);
    if (compiled.status == recompile::CompileStatus::ToolError) {
        return unscorable("syntax", compiled.tool_error);
    }
    if (compiled.status == recompile::CompileStatus::Failure) {
        DScoreResult r;
        r.kind = ResultKind::SyntaxFail;
        r.value = cfg.penalties.syn_pen;
        r.diagnostics = {{"stage", "syntax"},
                         {"iterations", compiled.iterations_used},
                         {"compiler", diagnostics_json(compiled.diagnostics)},
                         {"fixups", actions_json(compiled.actions)}};
        return r;
    }
    json syntax = {{"iterations", compiled.iterations_used}, {"fixups", actions_json(compiled.actions)}};

    // Semantics.
    frontend::FunctionAst ref_ast;
    frontend::FunctionAst cand_ast;
    try {
        ref_ast = frontend::parse_function(reference);
    } catch (const std::exception& e) {
        return unscorable("semantic", std::string("reference: ") + e.what());
    }
    try {
        cand_ast = frontend::parse_function(candidate);
    } catch (const std::exception& e) {
        return unscorable("semantic", std::string("candidate: ") + e.what());
    }

    const auto start = Clock::now();
    auto remaining = [&] {
        return cfg.semantic_budget_seconds - std::chrono::duration<double>(Clock::now() - start).count();
    };
    const symbolic::NameSet gt = symbolic::ground_truth_calls(ref_ast);
    symbolic::EngineConfig engine = cfg.engine;
    engine.timeout_seconds = std::min(engine.timeout_seconds, cfg.semantic_budget_seconds);
    symbolic::SymbolicModel ref_model;
    symbolic::SymbolicModel cand_model;
    try {
        auto ctx = std::make_shared<symbolic::ExprContext>();
        ref_model = symbolic::build_models(ref_ast, gt, engine, ctx);
        engine.timeout_seconds = std::max(remaining(), 1e-3);
        cand_model = symbolic::build_models(cand_ast, gt, engine, ctx);
    } catch (const symbolic::EngineFailure& e) {
        return unscorable("semantic", std::string(symbolic::to_string(e.kind())) + ": " + e.what());
    }
    if (remaining() <= 0) return unscorable("semantic", "timeout: semantic budget exhausted");

    equivalence::SolverConfig solver = cfg.solver;
    solver.timeout_seconds = std::min(solver.timeout_seconds, remaining());
    const equivalence::Verdict v = equivalence::check(ref_model, cand_model, solver);

    json semantic = {{"ret_equal", equivalence::to_string(v.ret_equal)},
                     {"call_equal", equivalence::to_string(v.call_equal)},
                     {"ground_truth", gt},
                     {"paths", {{"reference", ref_model.paths.size()}, {"candidate", cand_model.paths.size()}}}};
    if (!v.detail.empty()) semantic["detail"] = v.detail;
    if (v.witness) {
        semantic["witness"] = *v.witness;
        semantic["replay"] = replay(ref_ast, cand_ast, gt, *v.witness, engine);
    }
    if (cfg.verbose) {
        semantic["reference_model"] = symbolic::to_json(ref_model);
        semantic["candidate_model"] = symbolic::to_json(cand_model);
    }

    const std::optional<double> sem = equivalence::semantic_score(v, cfg.penalties);
    if (!sem) return unscorable("semantic", v.detail.empty() ? "unknown verdict" : v.detail, {{"semantic", semantic}});
    if (v.ret_equal == equivalence::Tri::False || v.call_equal == equivalence::Tri::False) {
        DScoreResult r;
        r.kind = v.ret_equal == equivalence::Tri::False ? ResultKind::SemRetFail : ResultKind::SemCallFail;
        r.value = *sem;
        r.diagnostics = {{"stage", "semantic"}, {"syntax", syntax}, {"semantic", semantic}};
        return r;
    }

    // Readability.
    const auto cand_features = readability::extract_features(candidate, cand_ast, cfg.readability);
    const auto ref_features = readability::extract_features(reference, ref_ast, cfg.readability);
    const readability::ReadabilityBreakdown rb = readability::compare(cand_features, ref_features, cfg.readability);
    DScoreResult r;
    r.kind = ResultKind::Pass;
    r.value = rb.score;
    r.diagnostics = {{"stage", "readability"}, {"syntax", syntax}, {"semantic", semantic}, {"readability", rb.to_json()}};
    return r;
}

}  // namespace dscore
