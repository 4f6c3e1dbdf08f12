#include "dscore/frontend/parser.hpp"

#include <set>
#include <unordered_map>

namespace dscore::frontend {

namespace {

constexpr int round_up_width(int bytes) {
    if (bytes <= 1) return 8;
    if (bytes <= 2) return 16;
    if (bytes <= 4) return 32;
    return 64;
}

constexpr std::uint64_t mask(int bits) { return bits >= 64 ? ~0ULL : ((1ULL << bits) - 1); }

CType literal_type(const Expr& e) {
    const bool u = e.suffix.find('u') != std::string::npos;
    const bool l = e.suffix.find('l') != std::string::npos;
    const std::uint64_t v = e.literal;
    if (u) return (!l && v <= 0xffffffffULL) ? CType::unsigned_int(32) : kULong;
    if (!l && v <= 0x7fffffffULL) return kInt;
    if (!l && e.hex && v <= 0xffffffffULL) return CType::unsigned_int(32);
    if (v <= 0x7fffffffffffffffULL) return kLong;
    return kULong;
}

class Analyzer {
public:
    explicit Analyzer(FunctionAst& fn) : fn_(fn) {}

    void run() {
        fn_.vars.clear();
        fn_.strings.clear();
        fn_.unresolved_symbols.clear();
        fn_.self_recursive = false;
        if (fn_.return_type.is_code()) throw DialectError(fn_.body.loc, "function returning code");
        scopes_.emplace_back();
        for (Param& p : fn_.params) {
            if (scopes_.back().count(p.name)) throw ParseError(p.loc, "redefinition of parameter '" + p.name + "'");
            VarInfo v;
            v.name = p.name;
            v.type = p.type;
            v.is_param = true;
            p.var_id = add_var(std::move(v));
        }
        collect_labels(fn_.body);
        stmt(fn_.body, false, false, false);
        scopes_.pop_back();
        for (const auto& [label, loc] : gotos_) {
            if (!labels_.count(label)) throw ParseError(loc, "label '" + label + "' used but not defined");
        }
    }

private:
    int add_var(VarInfo v) {
        fn_.vars.push_back(std::move(v));
        const int id = static_cast<int>(fn_.vars.size()) - 1;
        scopes_.back()[fn_.vars.back().name] = id;
        return id;
    }

    std::optional<int> lookup(const std::string& name) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            if (auto f = it->find(name); f != it->end()) return f->second;
        }
        return std::nullopt;
    }

    int implicit_var(const std::string& name, CType type) {
        if (auto it = implicit_.find(name); it != implicit_.end()) return it->second;
        VarInfo v;
        v.name = name;
        v.type = type;
        v.implicit = true;
        fn_.vars.push_back(std::move(v));
        const int id = static_cast<int>(fn_.vars.size()) - 1;
        implicit_[name] = id;
        return id;
    }

    void collect_labels(const Stmt& s) {
        if (s.kind == StmtKind::Label) {
            if (!labels_.insert(s.label).second) throw ParseError(s.loc, "duplicate label '" + s.label + "'");
        }
        for (const Stmt& c : s.children) collect_labels(c);
    }

    // ---- statements ----------------------------------------------------
    void stmt(Stmt& s, bool in_loop, bool in_switch, bool in_breakable) {
        switch (s.kind) {
            case StmtKind::Compound:
                scopes_.emplace_back();
                for (Stmt& c : s.children) stmt(c, in_loop, in_switch, in_breakable);
                scopes_.pop_back();
                break;
            case StmtKind::Decl:
                for (Declarator& d : s.decls) {
                    if (d.type.is_void() || d.type.is_code()) throw DialectError(d.loc, "variable '" + d.name + "' declared void");
                    if (d.init) {
                        rvalue(*d.init);
                        check_assignable(d.type, *d.init);
                    }
                    if (scopes_.back().count(d.name)) {
                        throw ParseError(d.loc, "redeclaration of '" + d.name + "'");
                    }
                    VarInfo v;
                    v.name = d.name;
                    v.type = d.type;
                    v.array_length = d.array_length;
                    d.var_id = add_var(std::move(v));
                }
                break;
            case StmtKind::ExprStmt:
                expr(*s.expr);
                break;
            case StmtKind::If:
                condition(*s.expr);
                for (Stmt& c : s.children) stmt(c, in_loop, in_switch, in_breakable);
                break;
            case StmtKind::While:
            case StmtKind::DoWhile:
                condition(*s.expr);
                stmt(s.children[0], true, in_switch, true);
                break;
            case StmtKind::For:
                scopes_.emplace_back();
                stmt(s.children[0], in_loop, in_switch, in_breakable);
                if (s.expr) condition(*s.expr);
                if (s.step) expr(*s.step);
                stmt(s.children[1], true, in_switch, true);
                scopes_.pop_back();
                break;
            case StmtKind::Switch: {
                expr(*s.expr);
                if (!s.expr->type.is_integer()) throw DialectError(s.expr->loc, "switch quantity not an integer");
                switch_cases_.emplace_back();
                stmt(s.children[0], in_loop, true, true);
                switch_cases_.pop_back();
                break;
            }
            case StmtKind::Case: {
                if (!in_switch) throw ParseError(s.loc, "case label not within a switch statement");
                expr(*s.expr);
                const auto v = fold(*s.expr);
                if (!v) throw DialectError(s.expr->loc, "case label does not reduce to an integer constant");
                s.case_value = *v;
                if (!switch_cases_.back().insert(*v).second) throw ParseError(s.loc, "duplicate case value");
                stmt(s.children[0], in_loop, in_switch, in_breakable);
                break;
            }
            case StmtKind::Default:
                if (!in_switch) throw ParseError(s.loc, "'default' label not within a switch statement");
                stmt(s.children[0], in_loop, in_switch, in_breakable);
                break;
            case StmtKind::Label:
                stmt(s.children[0], in_loop, in_switch, in_breakable);
                break;
            case StmtKind::Goto:
                gotos_.emplace_back(s.label, s.loc);
                break;
            case StmtKind::Return:
                if (s.expr) {
                    rvalue(*s.expr);
                    if (fn_.return_type.is_void() && !s.expr->type.is_void()) {
                        throw DialectError(s.loc, "'return' with a value, in function returning void");
                    }
                    if (!fn_.return_type.is_void()) check_assignable(fn_.return_type, *s.expr);
                }
                break;
            case StmtKind::Break:
                if (!in_breakable) throw ParseError(s.loc, "break statement not within loop or switch");
                break;
            case StmtKind::Continue:
                if (!in_loop) throw ParseError(s.loc, "continue statement not within a loop");
                break;
            case StmtKind::Empty:
                break;
        }
    }

    void condition(Expr& e) {
        rvalue(e);
        if (!e.type.is_scalar()) throw DialectError(e.loc, "used value where a scalar is required");
    }

    static void check_assignable(const CType& target, const Expr& value) {
        if (value.type.is_void()) throw DialectError(value.loc, "void value not ignored as it ought to be");
        if (!target.is_scalar() || !value.type.is_scalar()) {
            throw DialectError(value.loc, "incompatible types in assignment");
        }
    }

    // ---- expressions ---------------------------------------------------
    void rvalue(Expr& e) {
        expr(e);
        if (e.type.is_code()) throw DialectError(e.loc, "function designator used as a value");
    }

    static bool is_lvalue(const Expr& e) {
        switch (e.kind) {
            case ExprKind::Ident: return e.ref == RefKind::Variable;
            case ExprKind::Subscript: return true;
            case ExprKind::Unary: return e.unary == UnaryOp::Deref;
            default: return false;
        }
    }

    void require_lvalue(Expr& e, const char* what) {
        if (!is_lvalue(e)) throw DialectError(e.loc, std::string("lvalue required as ") + what);
        if (e.kind == ExprKind::Ident && fn_.vars[static_cast<std::size_t>(e.var_id)].array_length) {
            throw DialectError(e.loc, "assignment to expression with array type");
        }
    }

    void ident(Expr& e, bool as_callee) {
        if (auto id = lookup(e.text)) {
            e.ref = RefKind::Variable;
            e.var_id = *id;
            const VarInfo& v = fn_.vars[static_cast<std::size_t>(*id)];
            e.type = v.array_length ? v.type.address_of() : v.type;
            return;
        }
        if (as_callee) {
            e.ref = RefKind::Function;
            e.type = CType::code_type();
            return;
        }
        if (e.text == "NULL") {
            e.ref = RefKind::Constant;
            e.literal = 0;
            e.type = CType::void_type().address_of();
            return;
        }
        if (e.text == "true" || e.text == "false") {
            e.ref = RefKind::Constant;
            e.literal = e.text == "true" ? 1 : 0;
            e.type = kInt;
            return;
        }
        if (e.text == fn_.name || fn_.prototypes.count(e.text)) {
            // Function address used as a value: external addresses read as zero.
            e.ref = RefKind::Constant;
            e.literal = 0;
            e.type = CType::code_type().address_of();
            return;
        }
        CType type = kLong;
        if (auto g = fn_.globals.find(e.text); g != fn_.globals.end()) {
            type = g->second;
        } else {
            ++fn_.unresolved_symbols[e.text];
        }
        e.ref = RefKind::Variable;
        e.var_id = implicit_var(e.text, type);
        e.type = type;
    }

    void mark_address_taken(Expr& e) {
        if (e.kind == ExprKind::Ident && e.ref == RefKind::Variable) {
            fn_.vars[static_cast<std::size_t>(e.var_id)].address_taken = true;
        }
    }

    void expr(Expr& e) {
        switch (e.kind) {
            case ExprKind::IntLiteral:
                e.type = literal_type(e);
                break;
            case ExprKind::StringLiteral:
                e.string_id = static_cast<int>(fn_.strings.size());
                fn_.strings.push_back(e.text);
                e.type = CType::signed_int(8).address_of();
                break;
            case ExprKind::Ident:
                ident(e, false);
                break;
            case ExprKind::Unary:
                unary(e);
                break;
            case ExprKind::Binary:
                binary(e);
                break;
            case ExprKind::Assign:
                assign(e);
                break;
            case ExprKind::Ternary: {
                condition(e.children[0]);
                expr(e.children[1]);
                expr(e.children[2]);
                const CType& a = e.children[1].type;
                const CType& b = e.children[2].type;
                if (a.is_void() || b.is_void()) {
                    e.type = CType::void_type();
                } else if (a.is_integer() && b.is_integer()) {
                    e.type = common_type(a, b);
                } else if (a.is_pointer()) {
                    e.type = a;
                } else if (b.is_pointer()) {
                    e.type = b;
                } else {
                    throw DialectError(e.loc, "type mismatch in conditional expression");
                }
                e.op_type = e.type;
                break;
            }
            case ExprKind::Cast:
                expr(e.children[0]);
                if (e.written_type.is_code()) throw DialectError(e.loc, "cast to function type");
                if (!e.written_type.is_void()) {
                    if (e.children[0].type.is_void()) throw DialectError(e.loc, "void value not ignored as it ought to be");
                    if (e.children[0].type.is_code()) throw DialectError(e.loc, "function designator used as a value");
                }
                e.type = e.written_type;
                break;
            case ExprKind::Call:
                call(e);
                break;
            case ExprKind::Subscript: {
                rvalue(e.children[0]);
                rvalue(e.children[1]);
                const CType& a = e.children[0].type;
                const CType& b = e.children[1].type;
                CType ptr;
                if (a.is_pointer() && b.is_integer()) {
                    ptr = a;
                } else if (b.is_pointer() && a.is_integer()) {
                    ptr = b;
                } else {
                    throw DialectError(e.loc, "subscripted value is neither array nor pointer nor vector");
                }
                const CType elem = ptr.pointee();
                if (elem.is_void()) throw DialectError(e.loc, "dereferencing 'void *' pointer");
                if (elem.is_code()) throw DialectError(e.loc, "subscript of pointer to function");
                e.op_type = ptr;
                e.type = elem;
                break;
            }
            case ExprKind::SizeofType:
                e.literal = e.written_type.size_bytes();
                e.type = kULong;
                break;
            case ExprKind::SizeofExpr: {
                Expr& inner = e.children[0];
                expr(inner);
                if (inner.kind == ExprKind::Ident && inner.ref == RefKind::Variable &&
                    fn_.vars[static_cast<std::size_t>(inner.var_id)].array_length) {
                    e.literal = fn_.vars[static_cast<std::size_t>(inner.var_id)].storage_bytes();
                } else if (inner.kind == ExprKind::StringLiteral) {
                    e.literal = inner.text.size() + 1;
                } else {
                    e.literal = inner.type.size_bytes();
                }
                e.type = kULong;
                break;
            }
            case ExprKind::Concat:
                rvalue(e.children[0]);
                rvalue(e.children[1]);
                if (!e.children[0].type.is_scalar() || !e.children[1].type.is_scalar()) {
                    throw DialectError(e.loc, "invalid operand to " + e.text);
                }
                e.type = CType::unsigned_int(round_up_width(e.pseudo_in + e.pseudo_out));
                break;
            case ExprKind::SubPiece: {
                rvalue(e.children[0]);
                rvalue(e.children[1]);
                const auto off = fold(e.children[1]);
                if (!off) throw DialectError(e.children[1].loc, e.text + " offset must be a constant");
                if (*off + static_cast<std::uint64_t>(e.pseudo_out) > static_cast<std::uint64_t>(e.pseudo_in)) {
                    throw DialectError(e.loc, e.text + " reads past its input");
                }
                e.literal = *off;
                e.type = CType::unsigned_int(round_up_width(e.pseudo_out));
                break;
            }
        }
        e.side_effects = false;
        for (const Expr& c : e.children) e.side_effects = e.side_effects || c.side_effects;
        if (e.kind == ExprKind::Assign || e.kind == ExprKind::Call) e.side_effects = true;
        if (e.kind == ExprKind::Unary &&
            (e.unary == UnaryOp::PreInc || e.unary == UnaryOp::PreDec || e.unary == UnaryOp::PostInc ||
             e.unary == UnaryOp::PostDec)) {
            e.side_effects = true;
        }
        if (e.kind == ExprKind::SizeofExpr) e.side_effects = false;
    }

    void unary(Expr& e) {
        Expr& x = e.children[0];
        switch (e.unary) {
            case UnaryOp::Neg:
            case UnaryOp::Plus:
            case UnaryOp::BitNot:
                rvalue(x);
                if (!x.type.is_integer()) throw DialectError(e.loc, "wrong type argument to unary operator");
                e.type = promote(x.type);
                e.op_type = e.type;
                break;
            case UnaryOp::LogicalNot:
                condition(x);
                e.type = kInt;
                break;
            case UnaryOp::Deref:
                expr(x);
                if (x.type.is_code()) {
                    // *func is the function itself.
                    e.type = x.type;
                    break;
                }
                if (!x.type.is_pointer()) throw DialectError(e.loc, "invalid type argument of unary '*'");
                e.type = x.type.pointee();
                if (e.type.is_void()) throw DialectError(e.loc, "dereferencing 'void *' pointer");
                break;
            case UnaryOp::AddressOf:
                expr(x);
                if (x.kind == ExprKind::Ident && x.ref == RefKind::Function) {
                    e.type = CType::code_type().address_of();
                    break;
                }
                if (!is_lvalue(x)) throw DialectError(e.loc, "lvalue required as unary '&' operand");
                mark_address_taken(x);
                if (x.kind == ExprKind::Ident && fn_.vars[static_cast<std::size_t>(x.var_id)].array_length) {
                    e.type = x.type;  // &array has the address of the first element
                } else {
                    e.type = x.type.address_of();
                }
                break;
            case UnaryOp::PreInc:
            case UnaryOp::PreDec:
            case UnaryOp::PostInc:
            case UnaryOp::PostDec:
                expr(x);
                require_lvalue(x, "increment/decrement operand");
                if (!x.type.is_scalar()) throw DialectError(e.loc, "wrong type argument to increment");
                e.type = x.type;
                e.op_type = x.type;
                break;
        }
    }

    void binary(Expr& e) {
        Expr& a = e.children[0];
        Expr& b = e.children[1];
        if (e.binary == BinaryOp::Comma) {
            expr(a);
            expr(b);
            if (b.type.is_code()) throw DialectError(b.loc, "function designator used as a value");
            e.type = b.type;
            return;
        }
        rvalue(a);
        rvalue(b);
        if (a.type.is_void() || b.type.is_void()) throw DialectError(e.loc, "void value not ignored as it ought to be");
        const CType& ta = a.type;
        const CType& tb = b.type;
        switch (e.binary) {
            case BinaryOp::Add:
                if (ta.is_pointer() && tb.is_integer()) {
                    e.type = e.op_type = ta;
                } else if (ta.is_integer() && tb.is_pointer()) {
                    e.type = e.op_type = tb;
                } else if (ta.is_integer() && tb.is_integer()) {
                    e.type = e.op_type = common_type(ta, tb);
                } else {
                    throw DialectError(e.loc, "invalid operands to binary +");
                }
                break;
            case BinaryOp::Sub:
                if (ta.is_pointer() && tb.is_integer()) {
                    e.type = e.op_type = ta;
                } else if (ta.is_pointer() && tb.is_pointer()) {
                    e.op_type = ta;
                    e.type = kLong;
                } else if (ta.is_integer() && tb.is_integer()) {
                    e.type = e.op_type = common_type(ta, tb);
                } else {
                    throw DialectError(e.loc, "invalid operands to binary -");
                }
                break;
            case BinaryOp::Mul:
            case BinaryOp::Div:
            case BinaryOp::Rem:
            case BinaryOp::BitAnd:
            case BinaryOp::BitXor:
            case BinaryOp::BitOr:
                if (!ta.is_integer() || !tb.is_integer()) throw DialectError(e.loc, "invalid operands to binary operator");
                e.type = e.op_type = common_type(ta, tb);
                break;
            case BinaryOp::Shl:
            case BinaryOp::Shr:
                if (!ta.is_integer() || !tb.is_integer()) throw DialectError(e.loc, "invalid operands to shift");
                e.type = e.op_type = promote(ta);
                break;
            case BinaryOp::Lt:
            case BinaryOp::Gt:
            case BinaryOp::Le:
            case BinaryOp::Ge:
            case BinaryOp::Eq:
            case BinaryOp::Ne:
                if (!ta.is_scalar() || !tb.is_scalar()) throw DialectError(e.loc, "invalid operands to comparison");
                e.op_type = (ta.is_pointer() || tb.is_pointer()) ? kULong : common_type(ta, tb);
                e.type = kInt;
                break;
            case BinaryOp::LogicalAnd:
            case BinaryOp::LogicalOr:
                if (!ta.is_scalar() || !tb.is_scalar()) throw DialectError(e.loc, "used value where a scalar is required");
                e.type = kInt;
                break;
            case BinaryOp::Comma:
                break;
        }
    }

    void assign(Expr& e) {
        Expr& lhs = e.children[0];
        Expr& rhs = e.children[1];
        expr(lhs);
        rvalue(rhs);
        require_lvalue(lhs, "left operand of assignment");
        check_assignable(lhs.type, rhs);
        e.type = lhs.type;
        const CType& tl = lhs.type;
        const CType& tr = rhs.type;
        switch (e.assign) {
            case AssignOp::Assign:
                e.op_type = tl;
                break;
            case AssignOp::Add:
            case AssignOp::Sub:
                if (tl.is_pointer() && tr.is_integer()) {
                    e.op_type = tl;
                } else if (tl.is_integer() && tr.is_integer()) {
                    e.op_type = common_type(tl, tr);
                } else {
                    throw DialectError(e.loc, "invalid operands to compound assignment");
                }
                break;
            case AssignOp::Shl:
            case AssignOp::Shr:
                if (!tl.is_integer() || !tr.is_integer()) throw DialectError(e.loc, "invalid operands to compound assignment");
                e.op_type = promote(tl);
                break;
            default:
                if (!tl.is_integer() || !tr.is_integer()) throw DialectError(e.loc, "invalid operands to compound assignment");
                e.op_type = common_type(tl, tr);
                break;
        }
    }

    void call(Expr& e) {
        Expr& callee = e.children[0];
        if (callee.kind == ExprKind::Ident) {
            ident(callee, true);
        } else {
            expr(callee);
            const bool code_target = callee.type.is_code() ||
                                     (callee.type.is_pointer() && callee.type.pointee().is_code());
            if (!code_target && !callee.type.is_pointer()) throw DialectError(e.loc, "called object is not a function");
        }
        for (std::size_t i = 1; i < e.children.size(); ++i) {
            rvalue(e.children[i]);
            if (e.children[i].type.is_void()) throw DialectError(e.children[i].loc, "void value not ignored as it ought to be");
        }
        e.type = kLong;
        if (callee.kind == ExprKind::Ident && callee.ref == RefKind::Function) {
            if (callee.text == fn_.name) {
                fn_.self_recursive = true;
                e.type = fn_.return_type;
            } else if (auto p = fn_.prototypes.find(callee.text); p != fn_.prototypes.end()) {
                e.type = p->second.return_type;
            }
        }
    }

    /// Integer constant folding for case labels and SUB offsets.
    std::optional<std::uint64_t> fold(const Expr& e) const {
        const int w = e.type.value_width();
        switch (e.kind) {
            case ExprKind::IntLiteral:
                return e.literal & mask(w);
            case ExprKind::SizeofType:
            case ExprKind::SizeofExpr:
                return e.literal;
            case ExprKind::Cast: {
                auto v = fold(e.children[0]);
                if (!v) return std::nullopt;
                const CType& from = e.children[0].type;
                std::uint64_t x = *v;
                const int fw = from.value_width();
                if (from.is_signed() && fw < 64 && ((x >> (fw - 1)) & 1)) x |= ~mask(fw);
                return x & mask(w);
            }
            case ExprKind::Unary: {
                auto v = fold(e.children[0]);
                if (!v) return std::nullopt;
                const CType& from = e.children[0].type;
                std::uint64_t x = *v;
                const int fw = from.value_width();
                if (from.is_signed() && fw < 64 && ((x >> (fw - 1)) & 1)) x |= ~mask(fw);
                switch (e.unary) {
                    case UnaryOp::Neg: return (~x + 1) & mask(w);
                    case UnaryOp::Plus: return x & mask(w);
                    case UnaryOp::BitNot: return ~x & mask(w);
                    case UnaryOp::LogicalNot: return (*v == 0) ? 1 : 0;
                    default: return std::nullopt;
                }
            }
            default:
                return std::nullopt;
        }
    }

    FunctionAst& fn_;
    std::vector<std::unordered_map<std::string, int>> scopes_;
    std::unordered_map<std::string, int> implicit_;
    std::set<std::string> labels_;
    std::vector<std::pair<std::string, SourceLoc>> gotos_;
    std::vector<std::set<std::uint64_t>> switch_cases_;
};

}  // namespace

void analyze(FunctionAst& fn) { Analyzer(fn).run(); }

}  // namespace dscore::frontend
