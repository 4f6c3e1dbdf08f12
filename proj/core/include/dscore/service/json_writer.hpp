#pragma once

#include <nlohmann/json.hpp>

#include <string>

namespace dscore::service {

/// Compact JSON with every floating-point number printed as %.17g, so a value
/// survives a text round trip bit-exactly. Non-finite numbers become null.
std::string dump_json(const nlohmann::json& j, int indent = -1);

/// %.17g.
std::string format_double(double v);

}  // namespace dscore::service
