#include "dscore/frontend/ast_json.hpp"

#include "dscore/frontend/printer.hpp"

namespace dscore::frontend {

using nlohmann::json;

json to_json(const Expr& e) {
    json j;
    j["kind"] = kind_name(e.kind);
    j["width"] = e.type.value_width();
    j["type"] = to_string(e.type);
    switch (e.kind) {
        case ExprKind::IntLiteral:
            j["literal"] = e.literal;
            break;
        case ExprKind::StringLiteral:
            j["literal"] = e.text;
            break;
        case ExprKind::Ident:
        case ExprKind::Call:
        case ExprKind::Concat:
        case ExprKind::SubPiece:
            j["name"] = e.text;
            break;
        case ExprKind::Unary:
            j["op"] = e.unary == UnaryOp::PostInc || e.unary == UnaryOp::PostDec
                          ? std::string("post") + spelling(e.unary)
                          : std::string(spelling(e.unary));
            break;
        case ExprKind::Binary:
            j["op"] = spelling(e.binary);
            break;
        case ExprKind::Assign:
            j["op"] = spelling(e.assign);
            break;
        case ExprKind::Cast:
        case ExprKind::SizeofType:
            j["target"] = to_string(e.written_type);
            break;
        default:
            break;
    }
    j["children"] = json::array();
    for (const Expr& c : e.children) j["children"].push_back(to_json(c));
    return j;
}

json to_json(const Stmt& s) {
    json j;
    j["kind"] = kind_name(s.kind);
    if (!s.label.empty()) j["name"] = s.label;
    if (s.kind == StmtKind::Case) j["literal"] = s.case_value;
    json children = json::array();
    if (s.expr) children.push_back(to_json(*s.expr));
    if (s.step) children.push_back(to_json(*s.step));
    for (const Declarator& d : s.decls) {
        json dj;
        dj["kind"] = "declarator";
        dj["name"] = d.name;
        dj["type"] = to_string(d.type);
        dj["width"] = d.type.value_width();
        if (d.array_length) dj["length"] = *d.array_length;
        dj["children"] = json::array();
        if (d.init) dj["children"].push_back(to_json(*d.init));
        children.push_back(std::move(dj));
    }
    for (const Stmt& c : s.children) children.push_back(to_json(c));
    j["children"] = std::move(children);
    return j;
}

json to_json(const FunctionAst& fn) {
    json j;
    j["kind"] = "function";
    j["name"] = fn.name;
    j["type"] = to_string(fn.return_type);
    j["width"] = fn.return_type.is_void() ? 0 : fn.return_type.value_width();
    json params = json::array();
    for (const Param& p : fn.params) {
        params.push_back({{"kind", "param"}, {"name", p.name}, {"type", to_string(p.type)},
                          {"width", p.type.value_width()}, {"children", json::array()}});
    }
    j["params"] = std::move(params);
    j["children"] = json::array({to_json(fn.body)});
    return j;
}

}  // namespace dscore::frontend
