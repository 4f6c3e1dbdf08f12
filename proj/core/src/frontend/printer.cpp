#include "dscore/frontend/printer.hpp"

#include <algorithm>
#include <cstdio>

namespace dscore::frontend {

const char* spelling(UnaryOp op) {
    switch (op) {
        case UnaryOp::Neg: return "-";
        case UnaryOp::Plus: return "+";
        case UnaryOp::BitNot: return "~";
        case UnaryOp::LogicalNot: return "!";
        case UnaryOp::Deref: return "*";
        case UnaryOp::AddressOf: return "&";
        case UnaryOp::PreInc:
        case UnaryOp::PostInc: return "++";
        case UnaryOp::PreDec:
        case UnaryOp::PostDec: return "--";
    }
    return "?";
}

const char* spelling(BinaryOp op) {
    switch (op) {
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Rem: return "%";
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Shl: return "<<";
        case BinaryOp::Shr: return ">>";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::Eq: return "==";
        case BinaryOp::Ne: return "!=";
        case BinaryOp::BitAnd: return "&";
        case BinaryOp::BitXor: return "^";
        case BinaryOp::BitOr: return "|";
        case BinaryOp::LogicalAnd: return "&&";
        case BinaryOp::LogicalOr: return "||";
        case BinaryOp::Comma: return ",";
    }
    return "?";
}

const char* spelling(AssignOp op) {
    switch (op) {
        case AssignOp::Assign: return "=";
        case AssignOp::Add: return "+=";
        case AssignOp::Sub: return "-=";
        case AssignOp::Mul: return "*=";
        case AssignOp::Div: return "/=";
        case AssignOp::Rem: return "%=";
        case AssignOp::Shl: return "<<=";
        case AssignOp::Shr: return ">>=";
        case AssignOp::And: return "&=";
        case AssignOp::Xor: return "^=";
        case AssignOp::Or: return "|=";
    }
    return "?";
}

const char* kind_name(ExprKind kind) {
    switch (kind) {
        case ExprKind::IntLiteral: return "int_literal";
        case ExprKind::StringLiteral: return "string_literal";
        case ExprKind::Ident: return "ident";
        case ExprKind::Unary: return "unary";
        case ExprKind::Binary: return "binary";
        case ExprKind::Assign: return "assign";
        case ExprKind::Ternary: return "ternary";
        case ExprKind::Cast: return "cast";
        case ExprKind::Call: return "call";
        case ExprKind::Subscript: return "subscript";
        case ExprKind::SizeofType: return "sizeof_type";
        case ExprKind::SizeofExpr: return "sizeof_expr";
        case ExprKind::Concat: return "concat";
        case ExprKind::SubPiece: return "subpiece";
    }
    return "?";
}

const char* kind_name(StmtKind kind) {
    switch (kind) {
        case StmtKind::Compound: return "compound";
        case StmtKind::Decl: return "decl";
        case StmtKind::ExprStmt: return "expr";
        case StmtKind::If: return "if";
        case StmtKind::While: return "while";
        case StmtKind::DoWhile: return "do_while";
        case StmtKind::For: return "for";
        case StmtKind::Goto: return "goto";
        case StmtKind::Label: return "label";
        case StmtKind::Return: return "return";
        case StmtKind::Break: return "break";
        case StmtKind::Continue: return "continue";
        case StmtKind::Switch: return "switch";
        case StmtKind::Case: return "case";
        case StmtKind::Default: return "default";
        case StmtKind::Empty: return "empty";
    }
    return "?";
}

namespace {

std::string escape_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        const auto u = static_cast<unsigned char>(c);
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (u < 0x20 || u >= 0x7f) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\%03o", u);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

std::string literal_text(const Expr& e) {
    char buf[32];
    if (e.hex) {
        std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(e.literal));
    } else {
        std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(e.literal));
    }
    return buf + e.suffix;
}

std::string declarator_text(const CType& type, const std::string& name) {
    std::string t = to_string(type);
    if (type.is_pointer()) return t + name;
    return t + " " + name;
}

class Printer {
public:
    std::string out;

    void function(const FunctionAst& fn) {
        for (const auto& [name, proto] : fn.prototypes) {
            out += declarator_text(proto.return_type, name) + "();\n";
        }
        for (const auto& [name, type] : fn.globals) {
            out += declarator_text(type, name) + ";\n";
        }
        if (!fn.prototypes.empty() || !fn.globals.empty()) out += "\n";
        out += declarator_text(fn.return_type, fn.name) + "(";
        if (fn.params.empty()) out += "void";
        for (std::size_t i = 0; i < fn.params.size(); ++i) {
            if (i) out += ", ";
            out += declarator_text(fn.params[i].type, fn.params[i].name);
        }
        out += ")\n";
        stmt(fn.body, 0);
    }

    void indent(int depth) { out.append(static_cast<std::size_t>(depth) * 2, ' '); }

    // Declarators of one statement share the base type; pointer levels are per name.
    void declarators(const std::vector<Declarator>& decls) {
        int base_levels = decls.front().type.indirection;
        for (const Declarator& d : decls) base_levels = std::min(base_levels, d.type.indirection);
        CType base = decls.front().type;
        base.indirection = base_levels;
        out += to_string(base) + " ";
        for (std::size_t i = 0; i < decls.size(); ++i) {
            const Declarator& d = decls[i];
            if (i) out += ", ";
            out.append(static_cast<std::size_t>(d.type.indirection - base_levels), '*');
            out += d.name;
            if (d.array_length) out += "[" + std::to_string(*d.array_length) + "]";
            if (d.init) out += " = " + print_expr(*d.init);
        }
    }

    void stmt(const Stmt& s, int depth) {
        switch (s.kind) {
            case StmtKind::Compound:
                indent(depth);
                out += "{\n";
                for (const Stmt& c : s.children) stmt(c, depth + 1);
                indent(depth);
                out += "}\n";
                break;
            case StmtKind::Decl:
                indent(depth);
                declarators(s.decls);
                out += ";\n";
                break;
            case StmtKind::ExprStmt:
                indent(depth);
                out += print_expr(*s.expr) + ";\n";
                break;
            case StmtKind::If:
                indent(depth);
                out += "if (" + print_expr(*s.expr) + ")\n";
                body(s.children[0], depth);
                if (s.children.size() > 1) {
                    indent(depth);
                    out += "else\n";
                    body(s.children[1], depth);
                }
                break;
            case StmtKind::While:
                indent(depth);
                out += "while (" + print_expr(*s.expr) + ")\n";
                body(s.children[0], depth);
                break;
            case StmtKind::DoWhile:
                indent(depth);
                out += "do\n";
                body(s.children[0], depth);
                indent(depth);
                out += "while (" + print_expr(*s.expr) + ");\n";
                break;
            case StmtKind::For: {
                indent(depth);
                out += "for (";
                const Stmt& init = s.children[0];
                if (init.kind == StmtKind::Decl) {
                    declarators(init.decls);
                } else if (init.kind == StmtKind::ExprStmt) {
                    out += print_expr(*init.expr);
                }
                out += ";";
                if (s.expr) out += " " + print_expr(*s.expr);
                out += ";";
                if (s.step) out += " " + print_expr(*s.step);
                out += ")\n";
                body(s.children[1], depth);
                break;
            }
            case StmtKind::Goto:
                indent(depth);
                out += "goto " + s.label + ";\n";
                break;
            case StmtKind::Label:
                out += s.label + ":\n";
                stmt(s.children[0], depth);
                break;
            case StmtKind::Return:
                indent(depth);
                out += s.expr ? "return " + print_expr(*s.expr) + ";\n" : "return;\n";
                break;
            case StmtKind::Break:
                indent(depth);
                out += "break;\n";
                break;
            case StmtKind::Continue:
                indent(depth);
                out += "continue;\n";
                break;
            case StmtKind::Switch:
                indent(depth);
                out += "switch (" + print_expr(*s.expr) + ")\n";
                body(s.children[0], depth);
                break;
            case StmtKind::Case:
                indent(depth);
                out += "case " + print_expr(*s.expr) + ":\n";
                stmt(s.children[0], depth + 1);
                break;
            case StmtKind::Default:
                indent(depth);
                out += "default:\n";
                stmt(s.children[0], depth + 1);
                break;
            case StmtKind::Empty:
                indent(depth);
                out += ";\n";
                break;
        }
    }

    void body(const Stmt& s, int depth) { stmt(s, s.kind == StmtKind::Compound ? depth : depth + 1); }
};

bool same_expr(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
    switch (a.kind) {
        case ExprKind::IntLiteral:
            if (a.literal != b.literal || a.hex != b.hex || a.suffix != b.suffix) return false;
            break;
        case ExprKind::StringLiteral:
        case ExprKind::Ident:
        case ExprKind::Call:
            if (a.text != b.text) return false;
            break;
        case ExprKind::Unary:
            if (a.unary != b.unary) return false;
            break;
        case ExprKind::Binary:
            if (a.binary != b.binary) return false;
            break;
        case ExprKind::Assign:
            if (a.assign != b.assign) return false;
            break;
        case ExprKind::Cast:
        case ExprKind::SizeofType:
            if (!(a.written_type == b.written_type)) return false;
            break;
        case ExprKind::Concat:
        case ExprKind::SubPiece:
            if (a.pseudo_in != b.pseudo_in || a.pseudo_out != b.pseudo_out) return false;
            break;
        default:
            break;
    }
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!same_expr(a.children[i], b.children[i])) return false;
    }
    return true;
}

bool same_opt(const std::optional<Expr>& a, const std::optional<Expr>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || same_expr(*a, *b);
}

bool same_stmt(const Stmt& a, const Stmt& b) {
    if (a.kind != b.kind || a.label != b.label || a.children.size() != b.children.size() ||
        a.decls.size() != b.decls.size()) {
        return false;
    }
    if (!same_opt(a.expr, b.expr) || !same_opt(a.step, b.step)) return false;
    for (std::size_t i = 0; i < a.decls.size(); ++i) {
        const Declarator& x = a.decls[i];
        const Declarator& y = b.decls[i];
        if (x.name != y.name || !(x.type == y.type) || x.array_length != y.array_length || !same_opt(x.init, y.init)) {
            return false;
        }
    }
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!same_stmt(a.children[i], b.children[i])) return false;
    }
    return true;
}

}  // namespace

std::string print_expr(const Expr& e) {
    auto sub = [](const Expr& c) { return "(" + print_expr(c) + ")"; };
    switch (e.kind) {
        case ExprKind::IntLiteral: return literal_text(e);
        case ExprKind::StringLiteral: return escape_string(e.text);
        case ExprKind::Ident: return e.text;
        case ExprKind::Unary:
            if (e.unary == UnaryOp::PostInc || e.unary == UnaryOp::PostDec) return sub(e.children[0]) + spelling(e.unary);
            return std::string(spelling(e.unary)) + sub(e.children[0]);
        case ExprKind::Binary:
            return sub(e.children[0]) + " " + spelling(e.binary) + " " + sub(e.children[1]);
        case ExprKind::Assign:
            return sub(e.children[0]) + " " + spelling(e.assign) + " " + sub(e.children[1]);
        case ExprKind::Ternary:
            return sub(e.children[0]) + " ? " + sub(e.children[1]) + " : " + sub(e.children[2]);
        case ExprKind::Cast:
            return "(" + to_string(e.written_type) + ")" + sub(e.children[0]);
        case ExprKind::Call:
        case ExprKind::Concat:
        case ExprKind::SubPiece: {
            const bool plain = e.kind == ExprKind::Call;
            std::string s = plain ? (e.children[0].kind == ExprKind::Ident ? e.children[0].text : sub(e.children[0])) : e.text;
            s += "(";
            for (std::size_t i = plain ? 1 : 0; i < e.children.size(); ++i) {
                if (i > (plain ? 1U : 0U)) s += ", ";
                s += print_expr(e.children[i]);
            }
            return s + ")";
        }
        case ExprKind::Subscript:
            return sub(e.children[0]) + "[" + print_expr(e.children[1]) + "]";
        case ExprKind::SizeofType:
            return "sizeof(" + to_string(e.written_type) + ")";
        case ExprKind::SizeofExpr:
            return "sizeof" + sub(e.children[0]);
    }
    return "";
}

std::string print_function(const FunctionAst& fn) {
    Printer p;
    p.function(fn);
    return p.out;
}

bool same_structure(const FunctionAst& a, const FunctionAst& b) {
    if (a.name != b.name || !(a.return_type == b.return_type) || a.params.size() != b.params.size()) return false;
    for (std::size_t i = 0; i < a.params.size(); ++i) {
        if (a.params[i].name != b.params[i].name || !(a.params[i].type == b.params[i].type)) return false;
    }
    if (a.globals != b.globals || a.prototypes.size() != b.prototypes.size()) return false;
    for (const auto& [name, proto] : a.prototypes) {
        auto it = b.prototypes.find(name);
        if (it == b.prototypes.end() || !(it->second.return_type == proto.return_type)) return false;
    }
    return same_stmt(a.body, b.body);
}

}  // namespace dscore::frontend
