#pragma once

#include <stdexcept>
#include <string>

namespace dscore {

struct PenaltyConfig {
    double syn_pen = -3.0;
    double ret_pen = -2.0;
    double call_pen = -1.5;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Infimum of the readability range under default weights.
inline constexpr double kReadabilityInfimum = -1.0;

/// Requires syn_pen < ret_pen < call_pen < -1. Throws ConfigError naming the
/// first violated inequality.
void validate_penalties(const PenaltyConfig& cfg);

}  // namespace dscore
