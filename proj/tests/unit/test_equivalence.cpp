#include "dscore/equivalence/checker.hpp"
#include "dscore/frontend/parser.hpp"
#include "enumeration.hpp"
#include "fixtures.hpp"
#include "small_pairs.hpp"

#include <doctest.h>

using namespace dscore::equivalence;
using namespace dscore::symbolic;
using dscore::frontend::FunctionAst;
using dscore::frontend::parse_function;

namespace {

struct Pair {
    FunctionAst ref;
    FunctionAst cand;
    SymbolicModel mr;
    SymbolicModel mc;
};

Pair models(const std::string& ref, const std::string& cand) {
    Pair p{parse_function(ref), parse_function(cand), {}, {}};
    const NameSet gt = ground_truth_calls(p.ref);
    p.mr = build_models(p.ref, gt, {});
    p.mc = build_models(p.cand, gt, {});
    return p;
}

SolverConfig solver() { return SolverConfig::from_env(); }

}  // namespace

TEST_CASE("every fixture reference is equivalent to itself") {
    for (const char* name : fixtures::kCaseStudies) {
        const std::string src = fixtures::read(std::string(name) + "_original.c");
        const Pair p = models(src, src);
        const Verdict v = check(p.mr, p.mc, solver());
        CAPTURE(name);
        CHECK(v.ret_equal == Tri::True);
        CHECK(v.call_equal == Tri::True);
        CHECK(semantic_score(v, {}) == 0.0);
    }
}

TEST_CASE("fdisk baseline return value differs and the witness replays") {
    const Pair p = models(fixtures::read("fdisk_delete_all_partitions_original.c"),
                          fixtures::read("fdisk_delete_all_partitions_baseline.c"));
    const Verdict v = check(p.mr, p.mc, solver());
    REQUIRE(v.ret_equal == Tri::False);
    REQUIRE(v.witness);
    CHECK(semantic_score(v, {}) == -2.0);
    const NameSet gt = ground_truth_calls(p.ref);
    const auto r = concrete_eval(p.ref, *v.witness, gt, {});
    const auto c = concrete_eval(p.cand, *v.witness, gt, {});
    CHECK((*r.ret & 0xffffffffULL) != (*c.ret & 0xffffffffULL));
}

TEST_CASE("fdisk fine-tuned output is equivalent") {
    const Pair p = models(fixtures::read("fdisk_delete_all_partitions_original.c"),
                          fixtures::read("fdisk_delete_all_partitions_finetuned.c"));
    const Verdict v = check(p.mr, p.mc, solver());
    CHECK(v.ret_equal == Tri::True);
    CHECK(v.call_equal == Tri::True);
}

TEST_CASE("constant expressions compare equal") {
    const Pair p = models("int f(void){ return 1+1+1; }", "int f(void){ return 3; }");
    CHECK(check_ret(p.mr, p.mc, solver()).ret_equal == Tri::True);
}

TEST_CASE("the two echo programs agree on returns and call counts") {
    const Pair p = models(fixtures::read("echo_main_a.c"), fixtures::read("echo_main_b.c"));
    const Verdict v = check(p.mr, p.mc, solver());
    CHECK(v.ret_equal == Tri::True);
    CHECK(v.call_equal == Tri::True);
}

TEST_CASE("a dropped call is a call-count mismatch") {
    const Pair p = models("int f(int x){ printf(\"x\"); return 0; }", "int f(int x){ return 0; }");
    const Verdict v = check(p.mr, p.mc, solver());
    CHECK(v.ret_equal == Tri::True);
    CHECK(v.call_equal == Tri::False);
    CHECK(semantic_score(v, {}) == -1.5);
}

TEST_CASE("verdicts are symmetric") {
    for (const auto& sp : fixtures::kSmallPairs) {
        const Pair a = models(sp.reference, sp.candidate);
        const Pair b = models(sp.candidate, sp.reference);
        CAPTURE(std::string(sp.name));
        CHECK(check_ret(a.mr, a.mc, solver()).ret_equal == check_ret(b.mr, b.mc, solver()).ret_equal);
    }
}

TEST_CASE("verdicts match exhaustive enumeration on single-parameter pairs") {
    for (const auto& sp : fixtures::kSmallPairs) {
        const Pair p = models(sp.reference, sp.candidate);
        if (std::max(p.ref.params.size(), p.cand.params.size()) > 1) continue;
        SolverConfig cfg = solver();
        cfg.restrict_to_bytes = true;
        const Verdict r = check_ret(p.mr, p.mc, cfg);
        const Verdict c = check_call(p.mr, p.mc, cfg);
        const oracle::EnumeratedVerdict e = oracle::enumerate(p.ref, p.cand);
        CAPTURE(std::string(sp.name));
        CHECK((r.ret_equal == Tri::True) == e.ret_equal);
        CHECK((c.call_equal == Tri::True) == e.call_equal);
        CHECK(r.ret_equal != Tri::Unknown);
        CHECK(c.call_equal != Tri::Unknown);
    }
}

TEST_CASE("semantic score mapping") {
    Verdict v;
    v.ret_equal = Tri::False;
    CHECK(semantic_score(v, {}) == -2.0);
    v.ret_equal = Tri::True;
    v.call_equal = Tri::False;
    CHECK(semantic_score(v, {}) == -1.5);
    v.call_equal = Tri::True;
    CHECK(semantic_score(v, {}) == 0.0);
    v.call_equal = Tri::Unknown;
    CHECK_FALSE(semantic_score(v, {}).has_value());
}

TEST_CASE("incomplete exploration and solver failures are unknown") {
    const Pair p = models("long f(long a){ while (a) a = a - 1; return 0; }", "long f(long a){ return 0; }");
    CHECK(check_ret(p.mr, p.mc, solver()).ret_equal == Tri::Unknown);
    const Pair q = models("int f(int x){ return x; }", "int f(int x){ return x + 1; }");
    SolverConfig broken;
    broken.command = {"/nonexistent/solver"};
    const Verdict v = check_ret(q.mr, q.mc, broken);
    CHECK(v.ret_equal == Tri::Unknown);
    CHECK(v.detail.find("could not be started") != std::string::npos);
}

TEST_CASE("void and non-void returns never compare equal") {
    const Pair p = models("void f(int x){ return; }", "int f(int x){ return 0; }");
    CHECK(check_ret(p.mr, p.mc, solver()).ret_equal == Tri::False);
}
