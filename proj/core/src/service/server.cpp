#include "dscore/service/server.hpp"

#include "dscore/scoring/reward_group.hpp"
#include "dscore/service/json_writer.hpp"
#include "dscore/util/subprocess.hpp"

#include <httplib.h>

#include <chrono>
#include <istream>
#include <ostream>
#include <thread>

#include <unistd.h>

namespace dscore::service {

using nlohmann::json;

namespace {

std::string require_string(const json& body, const char* key) {
    if (!body.contains(key) || !body[key].is_string()) {
        throw RequestError(std::string("field '") + key + "' must be a string");
    }
    return body[key].get<std::string>();
}

std::vector<std::string> require_candidates(const json& body) {
    if (!body.contains("candidates") || !body["candidates"].is_array() || body["candidates"].empty()) {
        throw RequestError("field 'candidates' must be a non-empty array of strings");
    }
    std::vector<std::string> out;
    for (const json& c : body["candidates"]) {
        if (!c.is_string()) throw RequestError("field 'candidates' must be a non-empty array of strings");
        out.push_back(c.get<std::string>());
    }
    return out;
}

json group_json(const RewardGroup& g) {
    json kinds = json::array();
    for (const DScoreResult& r : g.results) kinds.push_back(to_string(r.kind));
    json masks = json::array();
    for (bool m : g.unscorable_mask) masks.push_back(m);
    return {{"reference_id", g.reference_id}, {"rewards", g.rewards}, {"advantages", g.advantages},
            {"masks", masks}, {"kinds", kinds}};
}

std::string resolved(const std::vector<std::string>& cmd) {
    if (cmd.empty()) return {};
    if (cmd[0].find('/') != std::string::npos) return ::access(cmd[0].c_str(), X_OK) == 0 ? cmd[0] : std::string();
    return util::resolve_executable(cmd[0]);
}

}  // namespace

json error_payload(const std::string& type, const std::string& message) {
    return {{"error", {{"type", type}, {"message", message}}}};
}

json health(const ServiceConfig& cfg) {
    const std::string cc = resolved(cfg.scoring.harness.compiler);
    const std::string smt = resolved(cfg.scoring.solver.command);
    return {{"status", !cc.empty() && !smt.empty() ? "ok" : "degraded"},
            {"compiler", cc.empty() ? json(nullptr) : json(cc)},
            {"solver", smt.empty() ? json(nullptr) : json(smt)}};
}

json handle_request(const std::string& op, const json& body, const ServiceConfig& cfg) {
    if (op == "health") return health(cfg);
    if (!body.is_object()) throw RequestError("request body must be a JSON object");
    if (op == "score") {
        return score(require_string(body, "reference"), require_string(body, "candidate"), cfg.scoring).to_json();
    }
    if (op == "score_group") {
        const std::string reference = require_string(body, "reference");
        RewardGroup g = score_group(reference, require_candidates(body), cfg.scoring, cfg.group);
        g.reference_id = body.value("reference_id", std::string());
        return group_json(g);
    }
    throw RequestError("unknown op '" + op + "'");
}

void serve_http(const ServiceConfig& cfg, const std::atomic<bool>& stop, const std::function<void(int)>& on_ready) {
    httplib::Server server;
    const std::size_t workers =
        cfg.jobs > 0 ? static_cast<std::size_t>(cfg.jobs) : std::max(1U, std::thread::hardware_concurrency());
    server.new_task_queue = [workers] { return new httplib::ThreadPool(workers); };

    auto reply = [](httplib::Response& res, int status, const json& body) {
        res.status = status;
        res.set_content(dump_json(body), "application/json");
    };
    auto post = [&](const std::string& op) {
        return [&, op](const httplib::Request& req, httplib::Response& res) {
            json body;
            try {
                body = json::parse(req.body);
            } catch (const json::exception& e) {
                reply(res, 400, error_payload("invalid_json", e.what()));
                return;
            }
            try {
                reply(res, 200, handle_request(op, body, cfg));
            } catch (const RequestError& e) {
                reply(res, 400, error_payload("bad_request", e.what()));
            } catch (const std::exception& e) {
                reply(res, 500, error_payload("internal", e.what()));
            }
        };
    };
    server.Post("/score", post("score"));
    server.Post("/score_group", post("score_group"));
    server.Get("/health", [&](const httplib::Request&, httplib::Response& res) { reply(res, 200, health(cfg)); });

    int port = cfg.port;
    if (port == 0) {
        port = server.bind_to_any_port(cfg.host);
        if (port < 0) throw std::runtime_error("cannot bind " + cfg.host);
    } else if (!server.bind_to_port(cfg.host, port)) {
        throw std::runtime_error("cannot bind " + cfg.host + ":" + std::to_string(port));
    }
    std::thread watcher([&] {
        server.wait_until_ready();
        if (on_ready) on_ready(port);
        while (!stop.load()) std::this_thread::sleep_for(std::chrono::milliseconds(50));
        server.stop();
    });
    server.listen_after_bind();
    watcher.join();
}

void serve_stdio(std::istream& in, std::ostream& out, const ServiceConfig& cfg) {
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json response;
        json id;
        try {
            const json req = json::parse(line);
            if (!req.is_object()) throw RequestError("request must be a JSON object");
            id = req.value("id", json(nullptr));
            if (!req.contains("op") || !req["op"].is_string()) throw RequestError("field 'op' must be a string");
            response = handle_request(req["op"].get<std::string>(), req, cfg);
        } catch (const json::exception& e) {
            response = error_payload("invalid_json", e.what());
        } catch (const RequestError& e) {
            response = error_payload("bad_request", e.what());
        } catch (const std::exception& e) {
            response = error_payload("internal", e.what());
        }
        if (!id.is_null()) response["id"] = id;
        out << dump_json(response) << '\n' << std::flush;
    }
}

}  // namespace dscore::service
