#include "dscore/symbolic/engine.hpp"
#include "dscore/symbolic/layout.hpp"

#include <unordered_map>

namespace dscore::symbolic {

using frontend::AssignOp;
using frontend::BinaryOp;
using frontend::CType;
using frontend::Expr;
using frontend::ExprKind;
using frontend::FunctionAst;
using frontend::RefKind;
using frontend::Stmt;
using frontend::StmtKind;
using frontend::UnaryOp;

namespace {

std::uint64_t mask_of(int w) { return w >= 64 ? ~0ULL : (1ULL << w) - 1; }

std::int64_t signed_of(std::uint64_t v, int w) {
    v &= mask_of(w);
    if (w < 64 && ((v >> (w - 1)) & 1)) v |= ~mask_of(w);
    return static_cast<std::int64_t>(v);
}

enum class Flow { Normal, Break, Continue, Return, Goto };

struct Place {
    int var = -1;
    std::uint64_t addr = 0;
    CType type;
};

class Interpreter {
public:
    Interpreter(const FunctionAst& fn, const NameSet& gt, const EngineConfig& cfg, std::uint64_t budget)
        : fn_(fn), gt_(gt), cfg_(cfg), budget_(budget), layout_(compute_layout(fn)) {
        index(fn.body, nullptr);
    }

    ConcreteResult run(const std::vector<std::uint64_t>& args) {
        if (fn_.self_recursive) throw EngineFailure(FailureKind::Unsupported, "recursive call to '" + fn_.name + "'");
        if (args.size() != fn_.params.size()) throw std::invalid_argument("argument count does not match parameters");
        regs_.assign(fn_.vars.size(), 0);
        for (std::size_t i = 0; i < fn_.strings.size(); ++i) {
            const std::string& s = fn_.strings[i];
            for (std::size_t k = 0; k < s.size(); ++k) {
                memory_[layout_.string_address[i] + k] = static_cast<std::uint8_t>(s[k]);
            }
        }
        for (std::size_t i = 0; i < fn_.params.size(); ++i) {
            const frontend::Param& p = fn_.params[i];
            const std::uint64_t v = p.type.is_pointer() ? layout_.pointer_param[i] : args[i] & mask_of(p.type.value_width());
            store(variable(p.var_id), v);
        }
        const Flow f = run_stmt(fn_.body);
        if (f == Flow::Goto) throw EngineFailure(FailureKind::Unsupported, "unresolved goto");
        ConcreteResult out;
        out.calls = calls_;
        if (!fn_.return_type.is_void()) out.ret = f == Flow::Return ? ret_ : 0;
        return out;
    }

private:
    // ---- statement index ---------------------------------------------
    void index(const Stmt& s, const Stmt* parent) {
        parent_[&s] = parent;
        if (s.kind == StmtKind::Label) labels_[s.label] = &s;
        for (const Stmt& c : s.children) index(c, &s);
    }

    bool contains(const Stmt& s, const Stmt* target) const {
        for (const Stmt* p = target; p; p = parent_.at(p)) {
            if (p == &s) return true;
        }
        return false;
    }

    void tick() {
        if (budget_ == 0) throw EngineFailure(FailureKind::Timeout, "step budget exhausted");
        --budget_;
    }

    // ---- statements ------------------------------------------------------
    Flow run_stmt(const Stmt& s) {
        Flow f = exec(s);
        while (f == Flow::Goto && contains(s, goto_target_)) {
            seek_ = goto_target_;
            f = exec(s);
        }
        return f;
    }

    Flow exec(const Stmt& s) {
        tick();
        if (seek_) {
            if (!contains(s, seek_)) return Flow::Normal;
            if (seek_ == &s) seek_ = nullptr;
        }
        bool resuming = seek_ != nullptr;
        switch (s.kind) {
            case StmtKind::Compound:
                for (const Stmt& c : s.children) {
                    const Flow f = run_stmt(c);
                    if (f != Flow::Normal) return f;
                }
                return Flow::Normal;
            case StmtKind::Decl:
                for (const frontend::Declarator& d : s.decls) {
                    const frontend::VarInfo& v = fn_.vars[static_cast<std::size_t>(d.var_id)];
                    if (d.init) {
                        store(variable(d.var_id), convert(eval(*d.init), d.init->type, v.type));
                    } else if (!v.memory_resident()) {
                        regs_[static_cast<std::size_t>(d.var_id)] = 0;
                    }
                }
                return Flow::Normal;
            case StmtKind::ExprStmt:
                eval(*s.expr);
                return Flow::Normal;
            case StmtKind::Empty:
                return Flow::Normal;
            case StmtKind::If:
                if (resuming) {
                    return contains(s.children[0], seek_) ? run_stmt(s.children[0]) : run_stmt(s.children[1]);
                }
                if (truth(*s.expr)) return run_stmt(s.children[0]);
                if (s.children.size() > 1) return run_stmt(s.children[1]);
                return Flow::Normal;
            case StmtKind::While:
                while (resuming || truth(*s.expr)) {
                    resuming = false;
                    const Flow f = run_stmt(s.children[0]);
                    if (f == Flow::Break) break;
                    if (f == Flow::Return || f == Flow::Goto) return f;
                }
                return Flow::Normal;
            case StmtKind::DoWhile:
                do {
                    const Flow f = run_stmt(s.children[0]);
                    if (f == Flow::Break) break;
                    if (f == Flow::Return || f == Flow::Goto) return f;
                } while (truth(*s.expr));
                return Flow::Normal;
            case StmtKind::For: {
                if (!resuming) {
                    const Flow f = run_stmt(s.children[0]);
                    if (f != Flow::Normal) return f;
                }
                while (resuming || !s.expr || truth(*s.expr)) {
                    resuming = false;
                    const Flow f = run_stmt(s.children[1]);
                    if (f == Flow::Break) break;
                    if (f == Flow::Return || f == Flow::Goto) return f;
                    if (s.step) eval(*s.step);
                    tick();
                }
                return Flow::Normal;
            }
            case StmtKind::Switch: {
                if (!resuming) {
                    const CType pt = frontend::promote(s.expr->type);
                    const std::uint64_t v = convert(eval(*s.expr), s.expr->type, pt);
                    const Stmt* target = nullptr;
                    const Stmt* fallback = nullptr;
                    find_case(s.children[0], v, pt, target, fallback);
                    if (!target) target = fallback;
                    if (!target) return Flow::Normal;
                    seek_ = target;
                }
                const Flow f = run_stmt(s.children[0]);
                return f == Flow::Break ? Flow::Normal : f;
            }
            case StmtKind::Case:
            case StmtKind::Default:
            case StmtKind::Label:
                return run_stmt(s.children[0]);
            case StmtKind::Goto:
                goto_target_ = labels_.at(s.label);
                return Flow::Goto;
            case StmtKind::Return:
                if (s.expr) {
                    const std::uint64_t v = eval(*s.expr);
                    ret_ = fn_.return_type.is_void() ? 0 : convert(v, s.expr->type, fn_.return_type);
                } else {
                    ret_ = 0;
                }
                return Flow::Return;
            case StmtKind::Break:
                return Flow::Break;
            case StmtKind::Continue:
                return Flow::Continue;
        }
        return Flow::Normal;
    }

    void find_case(const Stmt& s, std::uint64_t v, const CType& pt, const Stmt*& hit, const Stmt*& fallback) {
        if (hit) return;
        if (s.kind == StmtKind::Switch) return;
        if (s.kind == StmtKind::Case) {
            if (convert(eval(*s.expr), s.expr->type, pt) == v) {
                hit = &s;
                return;
            }
        }
        if (s.kind == StmtKind::Default) fallback = &s;
        for (const Stmt& c : s.children) find_case(c, v, pt, hit, fallback);
    }

    // ---- values ----------------------------------------------------------
    static std::uint64_t convert(std::uint64_t v, const CType& from, const CType& to) {
        if (to.is_void()) return 0;
        const int fw = from.value_width();
        const int tw = to.value_width();
        if (tw <= fw) return v & mask_of(tw);
        return from.is_signed() ? static_cast<std::uint64_t>(signed_of(v, fw)) & mask_of(tw) : v & mask_of(fw);
    }

    bool truth(const Expr& e) { return eval(e) != 0; }

    Place variable(int id) {
        const frontend::VarInfo& v = fn_.vars[static_cast<std::size_t>(id)];
        Place p;
        p.type = v.type;
        if (v.memory_resident()) {
            p.addr = layout_.var_address[static_cast<std::size_t>(id)];
        } else {
            p.var = id;
        }
        return p;
    }

    std::uint64_t load(const Place& p) {
        if (p.var >= 0) return regs_[static_cast<std::size_t>(p.var)];
        std::uint64_t v = 0;
        const std::uint64_t n = p.type.size_bytes();
        for (std::uint64_t k = 0; k < n; ++k) {
            auto it = memory_.find(p.addr + k);
            const std::uint64_t byte = it == memory_.end() ? 0 : it->second;
            v |= byte << (8 * k);
        }
        return v;
    }

    void store(const Place& p, std::uint64_t v) {
        if (p.var >= 0) {
            regs_[static_cast<std::size_t>(p.var)] = v & mask_of(p.type.value_width());
            return;
        }
        const std::uint64_t n = p.type.size_bytes();
        for (std::uint64_t k = 0; k < n; ++k) memory_[p.addr + k] = static_cast<std::uint8_t>(v >> (8 * k));
    }

    Place place(const Expr& e) {
        switch (e.kind) {
            case ExprKind::Ident:
                if (e.ref == RefKind::Variable) return variable(e.var_id);
                break;
            case ExprKind::Unary:
                if (e.unary == UnaryOp::Deref) return Place{-1, eval(e.children[0]), e.type};
                break;
            case ExprKind::Subscript: {
                const std::uint64_t a = eval(e.children[0]);
                const std::uint64_t b = eval(e.children[1]);
                const bool first = e.children[0].type.is_pointer();
                const Expr& idx = first ? e.children[1] : e.children[0];
                const std::uint64_t i = convert(first ? b : a, idx.type, frontend::kLong);
                return Place{-1, (first ? a : b) + i * e.op_type.pointee_size(), e.type};
            }
            default:
                break;
        }
        throw EngineFailure(FailureKind::Unsupported, "expression is not an lvalue");
    }

    static std::uint64_t arith(BinaryOp op, std::uint64_t a, std::uint64_t b, const CType& t) {
        const int w = t.value_width();
        const std::uint64_t m = mask_of(w);
        const bool s = t.is_signed();
        switch (op) {
            case BinaryOp::Add: return (a + b) & m;
            case BinaryOp::Sub: return (a - b) & m;
            case BinaryOp::Mul: return (a * b) & m;
            case BinaryOp::Div:
                if (!s) return b == 0 ? m : a / b;
                if (b == 0) return signed_of(a, w) < 0 ? 1 : m;
                if (signed_of(b, w) == -1) return (0 - a) & m;
                return static_cast<std::uint64_t>(signed_of(a, w) / signed_of(b, w)) & m;
            case BinaryOp::Rem:
                if (!s) return b == 0 ? a : a % b;
                if (b == 0) return a;
                if (signed_of(b, w) == -1) return 0;
                return static_cast<std::uint64_t>(signed_of(a, w) % signed_of(b, w)) & m;
            case BinaryOp::Shl: return b >= static_cast<std::uint64_t>(w) ? 0 : (a << b) & m;
            case BinaryOp::Shr:
                if (!s) return b >= static_cast<std::uint64_t>(w) ? 0 : a >> b;
                if (b >= static_cast<std::uint64_t>(w)) return signed_of(a, w) < 0 ? m : 0;
                return static_cast<std::uint64_t>(signed_of(a, w) >> b) & m;
            case BinaryOp::BitAnd: return a & b;
            case BinaryOp::BitOr: return a | b;
            case BinaryOp::BitXor: return a ^ b;
            default: break;
        }
        throw EngineFailure(FailureKind::Unsupported, "operator");
    }

    static bool compare(BinaryOp op, std::uint64_t a, std::uint64_t b, const CType& t) {
        if (t.is_signed()) {
            const std::int64_t x = signed_of(a, t.value_width());
            const std::int64_t y = signed_of(b, t.value_width());
            switch (op) {
                case BinaryOp::Lt: return x < y;
                case BinaryOp::Gt: return x > y;
                case BinaryOp::Le: return x <= y;
                case BinaryOp::Ge: return x >= y;
                default: break;
            }
        }
        switch (op) {
            case BinaryOp::Lt: return a < b;
            case BinaryOp::Gt: return a > b;
            case BinaryOp::Le: return a <= b;
            case BinaryOp::Ge: return a >= b;
            case BinaryOp::Eq: return a == b;
            case BinaryOp::Ne: return a != b;
            default: break;
        }
        throw EngineFailure(FailureKind::Unsupported, "comparison");
    }

    static std::uint64_t step_pointer(std::uint64_t p, std::uint64_t n, const CType& nt, const CType& pt, bool sub) {
        const std::uint64_t off = convert(n, nt, frontend::kLong) * pt.pointee_size();
        return sub ? p - off : p + off;
    }

    std::uint64_t binary(const Expr& e) {
        const Expr& ea = e.children[0];
        const Expr& eb = e.children[1];
        if (e.binary == BinaryOp::Comma) {
            eval(ea);
            return eval(eb);
        }
        if (e.binary == BinaryOp::LogicalAnd) return (eval(ea) != 0 && eval(eb) != 0) ? 1 : 0;
        if (e.binary == BinaryOp::LogicalOr) return (eval(ea) != 0 || eval(eb) != 0) ? 1 : 0;
        const std::uint64_t a = eval(ea);
        const std::uint64_t b = eval(eb);
        const CType& t = e.op_type;
        switch (e.binary) {
            case BinaryOp::Add:
                if (ea.type.is_pointer()) return step_pointer(a, b, eb.type, ea.type, false);
                if (eb.type.is_pointer()) return step_pointer(b, a, ea.type, eb.type, false);
                break;
            case BinaryOp::Sub:
                if (ea.type.is_pointer() && eb.type.is_pointer()) {
                    return arith(BinaryOp::Div, a - b, ea.type.pointee_size(), frontend::kLong);
                }
                if (ea.type.is_pointer()) return step_pointer(a, b, eb.type, ea.type, true);
                break;
            case BinaryOp::Lt:
            case BinaryOp::Gt:
            case BinaryOp::Le:
            case BinaryOp::Ge:
            case BinaryOp::Eq:
            case BinaryOp::Ne:
                return compare(e.binary, convert(a, ea.type, t), convert(b, eb.type, t), t) ? 1 : 0;
            default:
                break;
        }
        return arith(e.binary, convert(a, ea.type, t), convert(b, eb.type, t), t);
    }

    static BinaryOp compound_op(AssignOp op) {
        switch (op) {
            case AssignOp::Add: return BinaryOp::Add;
            case AssignOp::Sub: return BinaryOp::Sub;
            case AssignOp::Mul: return BinaryOp::Mul;
            case AssignOp::Div: return BinaryOp::Div;
            case AssignOp::Rem: return BinaryOp::Rem;
            case AssignOp::Shl: return BinaryOp::Shl;
            case AssignOp::Shr: return BinaryOp::Shr;
            case AssignOp::And: return BinaryOp::BitAnd;
            case AssignOp::Xor: return BinaryOp::BitXor;
            case AssignOp::Or: return BinaryOp::BitOr;
            case AssignOp::Assign: break;
        }
        return BinaryOp::Add;
    }

    std::uint64_t assign(const Expr& e) {
        const Expr& lhs = e.children[0];
        const Expr& rhs = e.children[1];
        const Place p = place(lhs);
        const std::uint64_t r = eval(rhs);
        std::uint64_t out;
        if (e.assign == AssignOp::Assign) {
            out = convert(r, rhs.type, lhs.type);
        } else {
            const std::uint64_t old = load(p);
            const BinaryOp op = compound_op(e.assign);
            if (lhs.type.is_pointer()) {
                out = step_pointer(old, r, rhs.type, lhs.type, op == BinaryOp::Sub);
            } else {
                const CType& t = e.op_type;
                out = convert(arith(op, convert(old, lhs.type, t), convert(r, rhs.type, t), t), t, lhs.type);
            }
        }
        store(p, out);
        return out;
    }

    std::uint64_t unary(const Expr& e) {
        const Expr& x = e.children[0];
        const int w = e.type.value_width();
        switch (e.unary) {
            case UnaryOp::Neg: return (0 - convert(eval(x), x.type, e.type)) & mask_of(w);
            case UnaryOp::Plus: return convert(eval(x), x.type, e.type);
            case UnaryOp::BitNot: return ~convert(eval(x), x.type, e.type) & mask_of(w);
            case UnaryOp::LogicalNot: return eval(x) == 0 ? 1 : 0;
            case UnaryOp::Deref:
                if (e.type.is_code()) return eval(x);
                return load(place(e));
            case UnaryOp::AddressOf: {
                if (x.kind == ExprKind::Ident && x.ref == RefKind::Function) return 0;
                const Place p = place(x);
                if (p.var >= 0) throw EngineFailure(FailureKind::Unsupported, "address of a register variable");
                return p.addr;
            }
            case UnaryOp::PreInc:
            case UnaryOp::PreDec:
            case UnaryOp::PostInc:
            case UnaryOp::PostDec: {
                const Place p = place(x);
                const std::uint64_t old = load(p);
                const std::uint64_t d = x.type.is_pointer() ? x.type.pointee_size() : 1;
                const bool dec = e.unary == UnaryOp::PreDec || e.unary == UnaryOp::PostDec;
                const std::uint64_t now = (dec ? old - d : old + d) & mask_of(x.type.value_width());
                store(p, now);
                return (e.unary == UnaryOp::PreInc || e.unary == UnaryOp::PreDec) ? now : old;
            }
        }
        throw EngineFailure(FailureKind::Unsupported, "unary operator");
    }

    std::uint64_t call(const Expr& e) {
        const Expr& callee = e.children[0];
        const bool named = callee.kind == ExprKind::Ident && callee.ref == RefKind::Function;
        if (!named) eval(callee);
        for (std::size_t i = 1; i < e.children.size(); ++i) eval(e.children[i]);
        ++calls_[named && gt_.count(callee.text) ? callee.text : std::string(kOtherCalls)];
        return convert(cfg_.external_return_value, frontend::kLong, e.type);
    }

    std::uint64_t fit(std::uint64_t v, int bytes) { return v & mask_of(bytes * 8); }

    std::uint64_t eval(const Expr& e) {
        tick();
        switch (e.kind) {
            case ExprKind::IntLiteral:
                return e.literal & mask_of(e.type.value_width());
            case ExprKind::StringLiteral:
                return layout_.string_address[static_cast<std::size_t>(e.string_id)];
            case ExprKind::Ident: {
                if (e.ref == RefKind::Constant) return e.literal & mask_of(e.type.value_width());
                if (e.ref != RefKind::Variable) return 0;
                if (fn_.vars[static_cast<std::size_t>(e.var_id)].array_length) {
                    return layout_.var_address[static_cast<std::size_t>(e.var_id)];
                }
                return load(variable(e.var_id));
            }
            case ExprKind::Unary:
                return unary(e);
            case ExprKind::Binary:
                return binary(e);
            case ExprKind::Assign:
                return assign(e);
            case ExprKind::Ternary: {
                const Expr& pick = eval(e.children[0]) != 0 ? e.children[1] : e.children[2];
                return convert(eval(pick), pick.type, e.type);
            }
            case ExprKind::Cast:
                return convert(eval(e.children[0]), e.children[0].type, e.written_type);
            case ExprKind::Call:
                return call(e);
            case ExprKind::Subscript:
                return load(place(e));
            case ExprKind::SizeofType:
            case ExprKind::SizeofExpr:
                return e.literal;
            case ExprKind::Concat: {
                const std::uint64_t hi = fit(eval(e.children[0]), e.pseudo_in);
                const std::uint64_t lo = fit(eval(e.children[1]), e.pseudo_out);
                return fit((hi << (8 * e.pseudo_out)) | lo, e.pseudo_in + e.pseudo_out);
            }
            case ExprKind::SubPiece: {
                const std::uint64_t v = fit(eval(e.children[0]), e.pseudo_in);
                eval(e.children[1]);
                return fit(v >> (8 * e.literal), e.pseudo_out);
            }
        }
        throw EngineFailure(FailureKind::Unsupported, "expression kind");
    }

    const FunctionAst& fn_;
    const NameSet& gt_;
    const EngineConfig& cfg_;
    std::uint64_t budget_;
    MemoryLayout layout_;
    std::unordered_map<const Stmt*, const Stmt*> parent_;
    std::unordered_map<std::string, const Stmt*> labels_;

    std::vector<std::uint64_t> regs_;
    std::unordered_map<std::uint64_t, std::uint8_t> memory_;
    CallCounts calls_;
    std::uint64_t ret_ = 0;
    const Stmt* seek_ = nullptr;
    const Stmt* goto_target_ = nullptr;
};

}  // namespace

ConcreteResult concrete_eval(const FunctionAst& ast, const std::vector<std::uint64_t>& args, const NameSet& ground_truth,
                             const EngineConfig& cfg, std::uint64_t step_budget) {
    return Interpreter(ast, ground_truth, cfg, step_budget).run(args);
}

}  // namespace dscore::symbolic
