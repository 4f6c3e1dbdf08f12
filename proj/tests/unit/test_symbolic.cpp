#include "dscore/frontend/parser.hpp"
#include "dscore/symbolic/engine.hpp"
#include "dscore/symbolic/expr.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

#include <doctest.h>

using namespace dscore::symbolic;
using dscore::frontend::parse_function;

namespace {

SymbolicModel model_of(const dscore::frontend::FunctionAst& fn, EngineConfig cfg = {}) {
    return build_models(fn, ground_truth_calls(fn), cfg);
}

void check_oracle(const std::string& src, int stride) {
    const auto fn = parse_function(src);
    const SymbolicModel m = model_of(fn);
    REQUIRE(m.explored_complete);
    int checked = 0;
    oracle::for_each_tuple(fn.params.size(), oracle::byte_domain(stride), [&](const std::vector<std::uint64_t>& args) {
        const std::string why = oracle::disagreement(fn, m, args);
        if (!why.empty()) FAIL_CHECK(fn.name << " " << why);
        ++checked;
    });
    CHECK(checked > 0);
}

}  // namespace

TEST_CASE("constant folding and identities") {
    ExprContext x;
    const SymValue a = x.arg(0);
    CHECK(x.add(a, x.constant(0, 64)) == a);
    CHECK(x.add(x.constant(2, 64), x.constant(3, 64)) == x.constant(5, 64));
    CHECK(x.add(x.add(a, x.constant(2, 64)), x.constant(3, 64)) == x.add(a, x.constant(5, 64)));
    CHECK(x.sub(a, x.constant(1, 64)) == x.add(a, x.constant(~0ULL, 64)));
    CHECK(x.add(x.constant(7, 64), a) == x.add(a, x.constant(7, 64)));
    CHECK(x.bit_not(x.bit_not(a)) == a);
    CHECK(x.extract(x.zext(x.extract(a, 7, 0), 64), 7, 0) == x.extract(a, 7, 0));
    CHECK(x.concat(x.extract(a, 15, 8), x.extract(a, 7, 0)) == x.extract(a, 15, 0));
}

TEST_CASE("apply_op follows bit-vector division and shift semantics") {
    CHECK(apply_op(Op::UDiv, 8, 5, 0) == 0xff);
    CHECK(apply_op(Op::URem, 8, 5, 0) == 5);
    CHECK(apply_op(Op::SDiv, 8, 0xfb, 0) == 1);     // -5 / 0
    CHECK(apply_op(Op::SDiv, 8, 5, 0) == 0xff);
    CHECK(apply_op(Op::SDiv, 8, 0xf9, 2) == 0xfd);  // -7 / 2 = -3
    CHECK(apply_op(Op::SRem, 8, 0xf9, 2) == 0xff);  // -7 % 2 = -1
    CHECK(apply_op(Op::SDiv, 8, 0x80, 0xff) == 0x80);
    CHECK(apply_op(Op::Shl, 32, 1, 32) == 0);
    CHECK(apply_op(Op::AShr, 8, 0x80, 9) == 0xff);
    CHECK(apply_op(Op::AShr, 8, 0x80, 3) == 0xf0);
    CHECK(apply_op(Op::Slt, 1, 0xff, 0, 0, 8) == 1);
}

TEST_CASE("memory loads fold through disjoint stores") {
    ExprContext x;
    const SymValue p = x.arg(0);
    SymValue m = x.mem_init();
    CHECK(x.load(m, p) == x.constant(0, 8));
    m = x.store(m, p, x.constant(0x41, 8));
    m = x.store(m, x.add(p, x.constant(1, 64)), x.constant(0x42, 8));
    CHECK(x.load(m, p) == x.constant(0x41, 8));
    CHECK(x.load(m, x.add(p, x.constant(2, 64)))->op == Op::Const);
    CHECK(x.load(m, x.arg(1))->op == Op::Load);
    Evaluator ev({0x1000, 0x1001});
    CHECK(ev.eval(x.load(m, x.arg(1))) == 0x42);
}

TEST_CASE("identity function has one unconditional path") {
    const auto fn = parse_function("long f(long x){ return x + 0; }");
    const SymbolicModel m = model_of(fn);
    REQUIRE(m.paths.size() == 1);
    CHECK(m.paths[0].condition == m.ctx->bool_const(true));
    CHECK(m.paths[0].ret == m.ctx->arg(0));
    CHECK(concrete_eval(fn, {7}, {}, {}).ret == 7);
}

TEST_CASE("echo program returns 2 after one printf and one fgets") {
    const auto fn = parse_function(fixtures::read("echo_main_a.c"));
    const SymbolicModel m = model_of(fn);
    CHECK(m.explored_complete);
    REQUIRE(m.paths.size() == 1);
    CHECK(m.paths[0].ret == m.ctx->constant(2, 32));
    CHECK(m.paths[0].calls == CallCounts{{"fgets", 1}, {"printf", 1}});
    const ConcreteResult r = concrete_eval(fn, {}, ground_truth_calls(fn), {});
    CHECK(r.ret == 2);
    CHECK(r.calls == CallCounts{{"fgets", 1}, {"printf", 1}});
}

TEST_CASE("uuid_copy unrolls its copy loop into 16 byte stores") {
    const auto fn = parse_function(fixtures::read("uuid_copy_original.c"));
    const SymbolicModel m = model_of(fn);
    CHECK(m.explored_complete);
    REQUIRE(m.paths.size() == 1);
    CHECK(m.paths[0].ret == nullptr);
    CHECK(oracle::nonzero(m.paths[0].calls).empty());
    EngineConfig tight;
    tight.unroll_bound = 8;
    CHECK_FALSE(model_of(fn, tight).explored_complete);
}

TEST_CASE("fdisk reference returns 0xffffffea when the table pointer is null") {
    const auto fn = parse_function(fixtures::read("fdisk_delete_all_partitions_original.c"));
    const NameSet gt = ground_truth_calls(fn);
    CHECK(gt == NameSet{"fdisk_delete_partition", "fdisk_is_partition_used"});
    CHECK(concrete_eval(fn, {0}, gt, {}).ret == 0xffffffeaULL);
    CHECK(concrete_eval(fn, {1}, gt, {}).ret == 0xffffffeaULL);
    const ConcreteResult base = concrete_eval(parse_function(fixtures::read("fdisk_delete_all_partitions_baseline.c")),
                                              {0}, gt, {});
    CHECK(base.ret == 0xfffefffeULL);
}

TEST_CASE("model agrees with the interpreter on the case-study fixtures") {
    for (const char* name : fixtures::kCaseStudies) {
        for (const char* variant : {"_original.c", "_baseline.c", "_finetuned.c"}) {
            const std::string file = std::string(name) + variant;
            dscore::frontend::FunctionAst fn;
            try {
                fn = parse_function(fixtures::read(file));
            } catch (const std::exception&) {
                continue;  // the syntax-failing baselines
            }
            CAPTURE(file);
            check_oracle(fixtures::read(file), fn.params.size() > 1 ? 15 : 1);
        }
    }
}

TEST_CASE("side effects inside short-circuit operators fork by replay") {
    const char* src =
        "long g(long x){ long n = 0; if ((x > 3) && (n = foo(), n == 0)) { n = 5; } "
        "long t = (x & 1) ? bar() : 7; return n + t + (x < 0 || baz()); }";
    const auto fn = parse_function(src);
    const SymbolicModel m = model_of(fn);
    CHECK(m.paths.size() == 8);
    check_oracle(src, 1);
}

TEST_CASE("switch, goto and compound assignment agree with the interpreter") {
    check_oracle(
        "int h(int c){ int r = 0; switch (c & 7) { case 1: r += 10; case 2: r += 20; break; case -1: r = 3; break; "
        "default: r = c; } if (r > 40) goto out; r <<= 1; out: return r; }",
        1);
    check_oracle(
        "unsigned char k(char a, unsigned short b){ unsigned char x = a; x -= b; x /= (b | 1); return x ^ (a >> 2); }",
        3);
    check_oracle(
        "long m(long p){ char buf[8]; long i; for (i = 0; i < 8; i++) buf[i] = (char)(p + i); "
        "return *(long *)buf + CONCAT44(p, 1) + SUB84(p, 4); }",
        1);
}

TEST_CASE("recursion, explosion and timeouts are reported as engine failures") {
    const auto rec = parse_function("long f(long x){ if (x) return f(x - 1); return 0; }");
    CHECK_THROWS_AS(model_of(rec), EngineFailure);
    const auto wide = parse_function(
        "long f(long a){ long r = 0; if (a & 1) r++; if (a & 2) r++; if (a & 4) r++; if (a & 8) r++; "
        "if (a & 16) r++; if (a & 32) r++; if (a & 64) r++; if (a & 128) r++; if (a & 256) r++; return r; }");
    try {
        model_of(wide);
        FAIL("expected path explosion");
    } catch (const EngineFailure& e) {
        CHECK(e.kind() == FailureKind::PathExplosion);
    }
    const auto loop = parse_function("long f(long a){ while (a) { a = a - 1; } return 0; }");
    const SymbolicModel m = model_of(loop);
    CHECK_FALSE(m.explored_complete);
}

TEST_CASE("model json lists paths with condition and return text") {
    const auto fn = parse_function("int f(int x){ if (x) return 1; return 2; }");
    const auto j = to_json(model_of(fn));
    CHECK(j["paths"].size() == 2);
    CHECK(j["paths"][0].contains("condition"));
    CHECK(j["explored_complete"] == true);
}
