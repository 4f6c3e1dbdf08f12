#include "dscore/frontend/parser.hpp"
#include "dscore/scoring/dscore.hpp"
#include "dscore/scoring/reward_group.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>

using namespace dscore;

namespace {

const char* const kRef = "int f(int a)\n{\n  if (a > 3) puts(\"x\");\n  return a + 1;\n}\n";
const char* const kSyntaxFail = "int f(int a)\n{\n  return a + ;\n}\n";
const char* const kRetFail = "int f(int a)\n{\n  if (a > 3) puts(\"x\");\n  return a + 2;\n}\n";
const char* const kCallFail = "int f(int a)\n{\n  return a + 1;\n}\n";
const char* const kPass = "int f(int a)\n{\n  if (3 < a) puts(\"x\");\n\n  return 1 + a;\n}\n";
const char* const kRecursive = "int f(int a)\n{\n  if (a <= 0) return 1;\n  return f(a - 1);\n}\n";

DScoreConfig config() { return DScoreConfig::from_env(); }

std::string fixture(const std::string& name, const char* tag) { return fixtures::read(name + tag); }

}  // namespace

TEST_CASE("result kind names round trip") {
    for (ResultKind k : {ResultKind::SyntaxFail, ResultKind::SemRetFail, ResultKind::SemCallFail, ResultKind::Pass,
                         ResultKind::Unscorable}) {
        CHECK(result_kind_from_string(to_string(k)) == k);
    }
    CHECK_FALSE(result_kind_from_string("bogus"));
}

TEST_CASE("config validation") {
    DScoreConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.penalties = {-1, -2, -1.5};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.penalties = {-3, -2, -0.5};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.readability.gamma = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.engine.unroll_bound = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("case-study gate classes") {
    const DScoreConfig cfg = config();
    DScoreResult uuid = score(fixture("uuid_copy", "_original.c"), fixture("uuid_copy", "_baseline.c"), cfg);
    CHECK(uuid.kind == ResultKind::SyntaxFail);
    CHECK(uuid.value == -3.0);
    CHECK(uuid.diagnostics.dump().find("subscripted value") != std::string::npos);

    DScoreResult fputs = score(fixture("fputs_color_cell_close", "_original.c"),
                               fixture("fputs_color_cell_close", "_baseline.c"), cfg);
    CHECK(fputs.kind == ResultKind::SyntaxFail);
    CHECK(fputs.value == -3.0);
    CHECK(fputs.diagnostics.dump().find("lvalue required") != std::string::npos);

    DScoreResult fdisk = score(fixture("fdisk_delete_all_partitions", "_original.c"),
                               fixture("fdisk_delete_all_partitions", "_baseline.c"), cfg);
    CHECK(fdisk.kind == ResultKind::SemRetFail);
    CHECK(fdisk.value == -2.0);
    REQUIRE(fdisk.diagnostics["semantic"].contains("witness"));
    const auto& replay = fdisk.diagnostics["semantic"]["replay"];
    CHECK(replay["reference"]["ret"] != replay["candidate"]["ret"]);

    const std::string strv = fixture("strv_length", "_original.c");
    DScoreResult tuned = score(strv, fixture("strv_length", "_finetuned.c"), cfg);
    DScoreResult base = score(strv, fixture("strv_length", "_baseline.c"), cfg);
    CHECK(tuned.kind == ResultKind::Pass);
    CHECK(base.kind == ResultKind::Pass);
    CHECK(*tuned.value > *base.value);
    CHECK(*tuned.value > 0);

    for (const char* name : {"uuid_copy", "fputs_color_cell_close"}) {
        DScoreResult r = score(fixture(name, "_original.c"), fixture(name, "_finetuned.c"), cfg);
        CAPTURE(name);
        CHECK(r.kind == ResultKind::Pass);
        CHECK(*r.value > 0);
    }
}

TEST_CASE("identity on fixture references") {
    const DScoreConfig cfg = config();
    std::vector<std::string> refs = {"echo_main_a.c", "echo_main_b.c"};
    for (const char* name : fixtures::kCaseStudies) refs.push_back(std::string(name) + "_original.c");
    for (const std::string& name : refs) {
        const std::string src = fixtures::read(name);
        DScoreResult r = score(src, src, cfg);
        CAPTURE(name);
        CHECK(r.kind == ResultKind::Pass);
        CHECK(r.value == 0.0);
    }
}

TEST_CASE("penalty ordering on one reference") {
    const DScoreConfig cfg = config();
    DScoreResult s = score(kRef, kSyntaxFail, cfg);
    DScoreResult r = score(kRef, kRetFail, cfg);
    DScoreResult c = score(kRef, kCallFail, cfg);
    DScoreResult p = score(kRef, kPass, cfg);
    CHECK(s.kind == ResultKind::SyntaxFail);
    CHECK(r.kind == ResultKind::SemRetFail);
    CHECK(c.kind == ResultKind::SemCallFail);
    CHECK(p.kind == ResultKind::Pass);
    CHECK(*s.value < *r.value);
    CHECK(*r.value < *c.value);
    CHECK(*c.value < *p.value);
    CHECK(std::fabs(*p.value) < 1.0);
    CHECK(s.diagnostics["stage"] == "syntax");
    CHECK_FALSE(s.diagnostics.contains("semantic"));
}

TEST_CASE("unscorable channel") {
    DScoreConfig cfg = config();
    DScoreResult rec = score(kRef, kRecursive, cfg);
    CHECK(rec.kind == ResultKind::Unscorable);
    CHECK_FALSE(rec.value);

    DScoreConfig no_cc = cfg;
    no_cc.harness.compiler = {"/nonexistent/cc"};
    CHECK(score(kRef, kPass, no_cc).kind == ResultKind::Unscorable);

    DScoreConfig no_smt = cfg;
    no_smt.solver.command = {"/nonexistent/z3"};
    CHECK(score(kRef, kPass, no_smt).kind == ResultKind::Unscorable);

    CHECK(score("int f(int a){ return a.b; }", kPass, cfg).kind == ResultKind::Unscorable);
}

TEST_CASE("verbose diagnostics carry models") {
    DScoreConfig cfg = config();
    cfg.verbose = true;
    DScoreResult r = score(kRef, kPass, cfg);
    CHECK(r.diagnostics["semantic"].contains("reference_model"));
    CHECK(r.diagnostics["readability"].contains("feature_deltas"));
    CHECK(r.to_json()["kind"] == "pass");
}

TEST_CASE("normalize") {
    CHECK(normalize({1, 1, 1}) == std::vector<double>{0, 0, 0});
    CHECK(normalize({-1, 1}) == std::vector<double>{-1, 1});
    // Independent high-precision recomputation.
    const std::vector<double> a = normalize({-3, -2, 0.5});
    CHECK(a[0] == doctest::Approx(-1.0190493307301361755).epsilon(1e-12));
    CHECK(a[1] == doctest::Approx(-0.33968311024337872518).epsilon(1e-12));
    CHECK(a[2] == doctest::Approx(1.3587324409735149007).epsilon(1e-12));
    CHECK(normalize({5}) == std::vector<double>{0});

    const std::vector<double> r = {0.3, -1.5, 0.9, -3, 0.1};
    std::vector<double> shifted;
    std::vector<double> scaled;
    for (double x : r) {
        shifted.push_back(x + 7.25);
        scaled.push_back(x * 3.5);
    }
    const auto base = normalize(r);
    const auto sh = normalize(shifted);
    const auto sc = normalize(scaled);
    double mean = 0;
    double sq = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(std::fabs(base[i] - sh[i]) < 1e-9);
        CHECK(std::fabs(base[i] - sc[i]) < 1e-9);
        mean += base[i];
        sq += base[i] * base[i];
    }
    CHECK(std::fabs(mean) < 1e-9);
    CHECK(std::fabs(sq / r.size() - 1) < 1e-9);
}

TEST_CASE("score_group") {
    const DScoreConfig cfg = config();
    CHECK_THROWS_AS(score_group(kRef, {}, cfg), std::invalid_argument);

    RewardGroup same = score_group(kRef, {kRef, kRef, kRef}, cfg);
    CHECK(same.rewards == std::vector<double>{0, 0, 0});
    CHECK(same.advantages == std::vector<double>{0, 0, 0});

    GroupConfig g;
    g.jobs = 3;
    RewardGroup mixed = score_group(kRef, {kSyntaxFail, kRetFail, kPass}, cfg, g);
    CHECK(mixed.rewards[0] == -3.0);
    CHECK(mixed.rewards[1] == -2.0);
    CHECK(mixed.rewards[2] > 0);
    CHECK(mixed.rewards[2] < 1);
    CHECK(mixed.advantages[0] < mixed.advantages[1]);
    CHECK(mixed.advantages[1] < mixed.advantages[2]);

    RewardGroup un = score_group(kRef, {kRecursive, kPass}, cfg);
    CHECK(un.unscorable_mask == std::vector<bool>{true, false});
    CHECK(un.rewards[0] == -2.0);
}
