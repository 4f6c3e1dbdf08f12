#include "dscore/scoring/penalties.hpp"

#include <cmath>

namespace dscore {

void validate_penalties(const PenaltyConfig& cfg) {
    for (double v : {cfg.syn_pen, cfg.ret_pen, cfg.call_pen}) {
        if (!std::isfinite(v)) throw ConfigError("penalties must be finite");
    }
    if (!(cfg.syn_pen < cfg.ret_pen)) throw ConfigError("syn_pen >= ret_pen");
    if (!(cfg.ret_pen < cfg.call_pen)) throw ConfigError("ret_pen >= call_pen");
    if (!(cfg.call_pen < kReadabilityInfimum)) throw ConfigError("call_pen >= readability infimum (-1)");
}

}  // namespace dscore
