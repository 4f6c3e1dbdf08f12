#include "dscore/frontend/parser.hpp"
#include "dscore/readability/readability.hpp"
#include "dscore/scoring/penalties.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <cctype>
#include <cmath>
#include <random>

using namespace dscore;
using namespace dscore::readability;

namespace {

FeatureVector features_of(const std::string& src, const ReadabilityConfig& cfg = {}) {
    return extract_features(src, frontend::parse_function(src), cfg);
}

int non_blank_chars(const std::string& s) {
    int n = 0;
    for (char c : s) n += std::isspace(static_cast<unsigned char>(c)) ? 0 : 1;
    return n;
}

ReadabilityConfig single(const std::string& name, double direction) {
    ReadabilityConfig cfg;
    cfg.features = {{"avg_line_length", Family::Bw, 1.0, 1.0}, {name, Family::R2iGeneric, 1.0, direction}};
    return cfg;
}

}  // namespace

TEST_CASE("empty body has no gotos or casts") {
    FeatureVector v = features_of("void f(void){}");
    CHECK(v.at("gotos") == 0);
    CHECK(v.at("casts") == 0);
    CHECK(v.at("if_statements") == 0);
}

TEST_CASE("feature counts on a small function") {
    FeatureVector v = features_of(
        "int f(int a, long p)\n{\n  int b, c = 0x10;\n\n  if (a) goto out;\n  b = a ? *(int *)p : 3;\nout:\n  return b + c;\n}\n");
    CHECK(v.at("casts") == 1);
    CHECK(v.at("gotos") == 1);
    CHECK(v.at("derefs") == 1);
    CHECK(v.at("ternaries") == 1);
    CHECK(v.at("hex_literals") == 1);
    CHECK(v.at("declared_variables") == 2);
    CHECK(v.at("if_statements") == 1);
    CHECK(v.at("non_blank_lines") == 8);
    CHECK(v.at("blank_line_ratio") == doctest::Approx(1.0 / 9));
    CHECK(v.at("max_nesting_depth") == 1);
}

TEST_CASE("strv_length: fine-tuned is shorter than the original") {
    const std::string orig = fixtures::read("strv_length_original.c");
    const std::string tuned = fixtures::read("strv_length_finetuned.c");
    CHECK(non_blank_chars(tuned) < non_blank_chars(orig));
    CHECK(features_of(tuned).at("tokens") < features_of(orig).at("tokens"));
    CHECK(readability_score(tuned, orig, {}) > 0);
    ReadabilityConfig cfg;
    FeatureVector a = features_of(tuned);
    FeatureVector b = features_of(orig);
    CHECK(r_bw(b, a, cfg) < 0);
    CHECK(r_bw(b, a, cfg) == -r_bw(a, b, cfg));
    CHECK(r_r2i(b, a, cfg) <= 0);
    CHECK(readability_score(orig, tuned, {}) < 0);
}

TEST_CASE("fputs_color_cell_close: merged checks drop one if") {
    FeatureVector orig = features_of(fixtures::read("fputs_color_cell_close_original.c"));
    FeatureVector tuned = features_of(fixtures::read("fputs_color_cell_close_finetuned.c"));
    CHECK(orig.at("if_statements") == 3);
    CHECK(orig.at("if_statements") - tuned.at("if_statements") == 1);
}

TEST_CASE("sigmoid and transform oracles") {
    // Independent high-precision values.
    CHECK(rescaled_sigmoid(1.0) == doctest::Approx(0.4621171572600097585).epsilon(1e-15));
    CHECK(r2i_contribution(9.0, 1.0) == doctest::Approx(-0.6321205588285576784).epsilon(1e-15));
    CHECK(r2i_contribution(9.0, 0.0) == doctest::Approx(0.6321205588285576784).epsilon(1e-15));
    CHECK(r2i_contribution(0.0, 0.3) == 0.0);
    CHECK(signed_log(-9.0) == -1.0);
}

TEST_CASE("r_bw halves to S(1)") {
    ReadabilityConfig cfg;
    cfg.features = {{"tokens", Family::Bw, 1.0, 1.0}, {"gotos", Family::R2iGeneric, 1.0, 1.0}};
    FeatureVector ref{{{"tokens", 20.0}, {"gotos", 0.0}}};
    FeatureVector cand{{{"tokens", 10.0}, {"gotos", 0.0}}};
    CHECK(r_bw(cand, ref, cfg) == doctest::Approx(0.4621171572600097585).epsilon(1e-15));
    CHECK(r_bw(ref, cand, cfg) == -r_bw(cand, ref, cfg));
    CHECK(r_bw(cand, cand, cfg) == 0.0);
}

TEST_CASE("single-feature r2i") {
    FeatureVector ref{{{"avg_line_length", 1.0}, {"tokens", 10.0}}};
    FeatureVector cand{{{"avg_line_length", 1.0}, {"tokens", 19.0}}};
    CHECK(r_r2i(cand, ref, single("tokens", 1.0)) == doctest::Approx(-0.6321205588285576784).epsilon(1e-15));
    CHECK(r_r2i(cand, ref, single("tokens", 0.0)) == doctest::Approx(0.6321205588285576784).epsilon(1e-15));
}

TEST_CASE("identity on every fixture") {
    for (const char* name : fixtures::kCaseStudies) {
        for (const char* tag : {"_original.c", "_finetuned.c"}) {
            const std::string src = fixtures::read(std::string(name) + tag);
            CAPTURE(std::string(name) + tag);
            CHECK(readability_score(src, src, {}) == 0.0);
        }
    }
}

TEST_CASE("random vectors: antisymmetry, identity, bounds") {
    ReadabilityConfig cfg;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> small(0.0, 40.0);
    std::uniform_int_distribution<int> count(0, 200);
    auto random_vector = [&] {
        FeatureVector v;
        for (const FeatureSpec& f : cfg.features) {
            v.values[f.name] = f.is_r2i() ? count(rng) : small(rng);
        }
        return v;
    };
    for (int i = 0; i < 200; ++i) {
        FeatureVector a = random_vector();
        FeatureVector b = random_vector();
        CHECK(std::fabs(r_bw(a, b, cfg) + r_bw(b, a, cfg)) <= 1e-12);
        CHECK(r_r2i(a, a, cfg) == 0.0);
        const double s = compare(a, b, cfg).score;
        CHECK(std::fabs(s) < cfg.gamma + cfg.delta);
        CHECK(s > PenaltyConfig{}.call_pen);
    }
    FeatureVector lo = random_vector();
    FeatureVector hi = lo;
    for (auto& [name, value] : hi.values) value = value * 1e6 + 1e6;
    CHECK(compare(lo, hi, cfg).score < 1.0);
    CHECK(compare(hi, lo, cfg).score > -1.0);
}

TEST_CASE("deleting tokens never lowers r2i") {
    ReadabilityConfig cfg;
    const std::string ref = fixtures::read("fdisk_delete_all_partitions_original.c");
    const std::string longer = "int f(int a)\n{\n  int b = (int)0x1;\n  if (a) b = b + *(int *)&a;\n  return b;\n}\n";
    const std::string shorter = "int f(int a)\n{\n  int b = 1;\n  return b;\n}\n";
    CHECK(r_r2i(features_of(shorter), features_of(ref), cfg) >= r_r2i(features_of(longer), features_of(ref), cfg));
}

TEST_CASE("config json round trip and validation") {
    ReadabilityConfig cfg;
    ReadabilityConfig back = ReadabilityConfig::from_json(cfg.to_json());
    CHECK(back.to_json() == cfg.to_json());
    auto weights = cfg.r2i_weights();
    double sum = 0;
    for (const auto& [name, w] : weights) sum += w;
    CHECK(sum == doctest::Approx(1.0));

    nlohmann::json bad = cfg.to_json();
    bad["features"][0]["name"] = "vibes";
    CHECK_THROWS_AS(ReadabilityConfig::from_json(bad), ConfigError);
    bad = cfg.to_json();
    bad["features"][12]["weight"] = -1;
    CHECK_THROWS_AS(ReadabilityConfig::from_json(bad), ConfigError);
    bad = cfg.to_json();
    bad["gamma"] = -0.1;
    CHECK_THROWS_AS(ReadabilityConfig::from_json(bad), ConfigError);
    bad = {{"features", {{{"name", "tokens"}, {"family", "bw"}, {"weight", 1}}}}};
    CHECK_THROWS_AS(ReadabilityConfig::from_json(bad), ConfigError);
}

TEST_CASE("readability_score propagates parse failures") {
    CHECK_THROWS(readability_score("int f(void){ return 0 }", "int f(void){ return 0; }", {}));
}
