#pragma once

#include "dscore/service/config.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace dscore::service {

/// Malformed request payload.
class RequestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {status, compiler, solver}; status is "ok" when both commands resolve on PATH.
nlohmann::json health(const ServiceConfig& cfg);

/// Dispatches "score", "score_group" or "health". Throws RequestError.
nlohmann::json handle_request(const std::string& op, const nlohmann::json& body, const ServiceConfig& cfg);

/// {"error": {"type", "message"}}.
nlohmann::json error_payload(const std::string& type, const std::string& message);

/// HTTP on cfg.host:cfg.port (0 picks a free port) with POST /score,
/// POST /score_group and GET /health. Returns once `stop` becomes true, after
/// in-flight requests finish. `on_ready` receives the bound port.
/// Throws std::runtime_error when the socket cannot be bound.
void serve_http(const ServiceConfig& cfg, const std::atomic<bool>& stop, const std::function<void(int)>& on_ready = {});

/// Newline-delimited JSON: each input line is {"op": ..., "id"?: ..., ...};
/// each output line is the response with "id" echoed. Returns at end of input.
void serve_stdio(std::istream& in, std::ostream& out, const ServiceConfig& cfg);

}  // namespace dscore::service
