#include "dscore/service/json_writer.hpp"

#include <cmath>
#include <cstdio>

namespace dscore::service {

using nlohmann::json;

namespace {

void newline(std::string& out, int indent, int depth) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * depth), ' ');
}

void write(const json& j, std::string& out, int indent, int depth) {
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(out, indent, depth + 1);
                out += json(it.key()).dump(-1, ' ', false, json::error_handler_t::replace);
                out += indent < 0 ? ":" : ": ";
                write(it.value(), out, indent, depth + 1);
            }
            newline(out, indent, depth);
            out += '}';
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const json& v : j) {
                if (!first) out += ',';
                first = false;
                newline(out, indent, depth + 1);
                write(v, out, indent, depth + 1);
            }
            newline(out, indent, depth);
            out += ']';
            return;
        }
        case json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_double(v) : "null";
            return;
        }
        default:
            out += j.dump(-1, ' ', false, json::error_handler_t::replace);
            return;
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string dump_json(const json& j, int indent) {
    std::string out;
    write(j, out, indent, 0);
    return out;
}

}  // namespace dscore::service
