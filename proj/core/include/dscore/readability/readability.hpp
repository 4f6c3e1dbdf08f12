#pragma once

#include "dscore/frontend/ast.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dscore::readability {

enum class Family : std::uint8_t { Bw, R2iConflicting, R2iGeneric };

const char* to_string(Family f);

struct FeatureSpec {
    std::string name;
    Family family = Family::Bw;
    double weight = 0.0;
    double direction = 1.0;  // r2i only: 1 = fewer is better, 0 = more is better

    [[nodiscard]] bool is_r2i() const { return family != Family::Bw; }
};

/// Feature name -> measurement.
struct FeatureVector {
    std::map<std::string, double> values;

    [[nodiscard]] double at(const std::string& name) const { return values.at(name); }
    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

struct ReadabilityConfig {
    double gamma = 0.25;
    double delta = 0.75;
    double epsilon_guard = 1e-9;
    std::vector<FeatureSpec> features = default_features();

    static std::vector<FeatureSpec> default_features();

    /// Throws ConfigError on unknown features, duplicates, non-finite or
    /// negative r2i weights, directions outside [0,1] or an empty r2i set.
    void validate() const;

    /// r2i weights divided by their sum.
    [[nodiscard]] std::map<std::string, double> r2i_weights() const;

    static ReadabilityConfig from_json(const nlohmann::json& j);
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Names extract_features knows how to measure.
const std::vector<std::string>& known_features();

/// Every known feature.
FeatureVector extract_features(std::string_view src, const frontend::FunctionAst& ast);
/// Only the features in cfg.
FeatureVector extract_features(std::string_view src, const frontend::FunctionAst& ast, const ReadabilityConfig& cfg);

/// Sum of f * w over the bw features.
double r_mul(const FeatureVector& v, const ReadabilityConfig& cfg);

/// 2 / (1 + e^-t) - 1.
double rescaled_sigmoid(double t);

/// Signed log: sign(x) * log10(1 + |x|).
double signed_log(double x);

/// r e^-L + (1 - r)(1 - e^-L) - r with L = signed_log(x). Zero at x = 0.
double r2i_contribution(double x, double direction);

double r_bw(const FeatureVector& cand, const FeatureVector& ref, const ReadabilityConfig& cfg);
double r_r2i(const FeatureVector& cand, const FeatureVector& ref, const ReadabilityConfig& cfg);

struct ReadabilityBreakdown {
    double bw = 0.0;
    double r2i = 0.0;
    double score = 0.0;
    FeatureVector candidate;
    FeatureVector reference;

    [[nodiscard]] nlohmann::json to_json() const;
};

ReadabilityBreakdown compare(const FeatureVector& cand, const FeatureVector& ref, const ReadabilityConfig& cfg);

/// gamma * r_bw + delta * r_r2i. Parses both sources; throws ParseError or
/// DialectError when either does not parse.
double readability_score(std::string_view cand_src, std::string_view ref_src, const ReadabilityConfig& cfg);

}  // namespace dscore::readability
