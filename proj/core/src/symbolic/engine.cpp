#include "dscore/symbolic/engine.hpp"

#include "cfg.hpp"
#include "dscore/frontend/metrics.hpp"
#include "dscore/symbolic/layout.hpp"

#include <algorithm>
#include <chrono>

namespace dscore::symbolic {

using frontend::AssignOp;
using frontend::BinaryOp;
using frontend::CType;
using frontend::Expr;
using frontend::ExprKind;
using frontend::FunctionAst;
using frontend::RefKind;
using frontend::UnaryOp;

void EngineConfig::validate() const {
    if (unroll_bound <= 0) throw std::invalid_argument("unroll_bound must be positive");
    if (!(timeout_seconds > 0)) throw std::invalid_argument("timeout_seconds must be positive");
    if (max_paths <= 0) throw std::invalid_argument("max_paths must be positive");
}

const char* to_string(FailureKind kind) {
    switch (kind) {
        case FailureKind::Timeout: return "timeout";
        case FailureKind::Unsupported: return "unsupported";
        case FailureKind::PathExplosion: return "path-explosion";
    }
    return "?";
}

EngineFailure::EngineFailure(FailureKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

NameSet ground_truth_calls(const FunctionAst& reference) {
    NameSet out;
    for (const auto& [name, n] : frontend::collect_external_calls(reference)) out.insert(name);
    return out;
}

namespace {

struct State {
    std::vector<SymValue> env;
    SymValue mem = nullptr;
    std::vector<SymValue> atoms;
    CallCounts calls;
    std::vector<int> visits;
};

struct WorkItem {
    State state;
    int block = 0;
    std::size_t step = 0;
    std::vector<bool> script;
};

struct LValue {
    int var = -1;              // register variable, or
    SymValue addr = nullptr;   // memory address
    CType type;
};

class Engine {
public:
    Engine(const FunctionAst& fn, const NameSet& gt, const EngineConfig& cfg, ExprContext& ctx)
        : fn_(fn), gt_(gt), cfg_(cfg), x_(ctx), layout_(compute_layout(fn)), graph_(detail::lower(fn)) {}

    void run(SymbolicModel& model) {
        if (fn_.self_recursive) throw EngineFailure(FailureKind::Unsupported, "recursive call to '" + fn_.name + "'");
        deadline_ = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(cfg_.timeout_seconds));
        model_ = &model;
        WorkItem init;
        init.state = initial_state();
        init.block = graph_.entry;
        init.state.visits[static_cast<std::size_t>(graph_.entry)] = 1;
        work_.push_back(std::move(init));
        while (!work_.empty()) {
            WorkItem item = std::move(work_.back());
            work_.pop_back();
            explore(std::move(item));
        }
    }

private:
    // ---- setup ---------------------------------------------------------
    State initial_state() {
        State s;
        s.mem = x_.mem_init();
        s.visits.assign(graph_.blocks.size(), 0);
        for (const frontend::VarInfo& v : fn_.vars) s.env.push_back(x_.constant(0, v.type.value_width()));
        st_ = &s;
        for (std::size_t i = 0; i < fn_.strings.size(); ++i) {
            const std::string& text = fn_.strings[i];
            for (std::size_t k = 0; k < text.size(); ++k) {
                const auto byte = static_cast<unsigned char>(text[k]);
                if (byte == 0) continue;
                s.mem = x_.store(s.mem, x_.constant(layout_.string_address[i] + k, 64), x_.constant(byte, 8));
            }
        }
        for (std::size_t i = 0; i < fn_.params.size(); ++i) {
            const frontend::Param& p = fn_.params[i];
            SymValue v = p.type.is_pointer() ? x_.constant(layout_.pointer_param[i], 64)
                                             : fit(x_.arg(static_cast<int>(i), 64), p.type.value_width());
            write(var_lvalue(p.var_id), v);
        }
        st_ = nullptr;
        return s;
    }

    // ---- exploration ---------------------------------------------------
    void check_budget() {
        if (std::chrono::steady_clock::now() > deadline_) {
            throw EngineFailure(FailureKind::Timeout, "symbolic execution exceeded " +
                                                          std::to_string(cfg_.timeout_seconds) + " s");
        }
    }

    void count_path() {
        if (++paths_seen_ > cfg_.max_paths) {
            throw EngineFailure(FailureKind::PathExplosion, "more than " + std::to_string(cfg_.max_paths) + " paths");
        }
    }

    // Returns false when the visit bound is exceeded.
    bool enter(State& s, int block) {
        int& n = s.visits[static_cast<std::size_t>(block)];
        if (++n > cfg_.unroll_bound) {
            model_->explored_complete = false;
            count_path();
            return false;
        }
        return true;
    }

    bool has_atom(const State& s, SymValue a) const {
        return std::find(s.atoms.begin(), s.atoms.end(), a) != s.atoms.end();
    }

    void explore(WorkItem item) {
        State& s = item.state;
        int b = item.block;
        std::size_t step = item.step;
        std::vector<bool> script = std::move(item.script);
        while (true) {
            check_budget();
            const detail::Block& blk = graph_.blocks[static_cast<std::size_t>(b)];
            const Expr* effect_expr = step < blk.steps.size()
                                          ? (blk.steps[step].decl ? (blk.steps[step].decl->init ? &*blk.steps[step].decl->init : nullptr)
                                                                  : blk.steps[step].expr)
                                          : blk.term.expr;
            std::optional<State> before;
            if (effect_expr && effect_expr->side_effects) before = s;

            begin_step(s, script);
            SymValue value = nullptr;
            if (step < blk.steps.size()) {
                run_step(blk.steps[step]);
            } else if (blk.term.expr) {
                value = rvalue(*blk.term.expr);
            }
            for (std::vector<bool>& alt : alts_) {
                work_.push_back(WorkItem{*before, b, step, std::move(alt)});
            }
            alts_.clear();
            script.clear();
            st_ = nullptr;

            if (step < blk.steps.size()) {
                ++step;
                continue;
            }
            const detail::Terminator& t = blk.term;
            switch (t.kind) {
                case detail::TermKind::Jump:
                    if (!enter(s, t.target)) return;
                    b = t.target;
                    step = 0;
                    continue;
                case detail::TermKind::Branch: {
                    const SymValue c = x_.truthy(value);
                    const SymValue nc = x_.logical_not(c);
                    bool take_true = true;
                    bool take_false = true;
                    if (c->is_const()) {
                        take_true = c->value != 0;
                        take_false = !take_true;
                    } else if (has_atom(s, c)) {
                        take_false = false;
                    } else if (has_atom(s, nc)) {
                        take_true = false;
                    }
                    if (take_true && take_false) {
                        WorkItem alt{s, t.target_false, 0, {}};
                        alt.state.atoms.push_back(nc);
                        if (enter(alt.state, t.target_false)) work_.push_back(std::move(alt));
                        s.atoms.push_back(c);
                    }
                    const int next = take_true ? t.target : t.target_false;
                    if (!enter(s, next)) return;
                    b = next;
                    step = 0;
                    continue;
                }
                case detail::TermKind::Switch: {
                    const int next = dispatch_switch(s, t, value);
                    if (next < 0 || !enter(s, next)) return;
                    b = next;
                    step = 0;
                    continue;
                }
                case detail::TermKind::Return:
                    finish(s, t.expr && value ? convert(value, t.expr->type, fn_.return_type) : nullptr);
                    return;
                case detail::TermKind::End:
                    finish(s, nullptr);
                    return;
            }
        }
    }

    // Queues every feasible non-first alternative and returns the first, or -1.
    int dispatch_switch(State& s, const detail::Terminator& t, SymValue value) {
        const int w = frontend::promote(t.expr->type).value_width();
        const SymValue v = convert(value, t.expr->type, frontend::promote(t.expr->type));
        std::vector<std::pair<std::vector<SymValue>, int>> choices;
        std::vector<SymValue> misses;
        bool decided = false;
        for (const auto& [cv, target] : t.cases) {
            const SymValue hit = x_.eq(v, x_.constant(cv, w));
            if (hit->is_const()) {
                if (hit->value) {
                    choices.push_back({misses, target});
                    decided = true;
                    break;
                }
                continue;
            }
            const SymValue miss = x_.logical_not(hit);
            if (has_atom(s, hit)) {
                choices.push_back({misses, target});
                decided = true;
                break;
            }
            if (has_atom(s, miss)) continue;
            std::vector<SymValue> atoms = misses;
            atoms.push_back(hit);
            choices.push_back({std::move(atoms), target});
            misses.push_back(miss);
        }
        if (!decided) choices.push_back({misses, t.target});
        for (std::size_t i = choices.size(); i-- > 1;) {
            WorkItem alt{s, choices[i].second, 0, {}};
            for (SymValue a : choices[i].first) alt.state.atoms.push_back(a);
            if (enter(alt.state, choices[i].second)) work_.push_back(std::move(alt));
        }
        for (SymValue a : choices[0].first) s.atoms.push_back(a);
        return choices[0].second;
    }

    void finish(State& s, SymValue value) {
        count_path();
        ModelPath p;
        p.atoms = s.atoms;
        SymValue pc = x_.bool_const(true);
        for (SymValue a : s.atoms) pc = x_.bit_and(pc, a);
        p.condition = pc;
        if (!fn_.return_type.is_void()) {
            p.ret = value ? value : x_.constant(0, fn_.return_type.value_width());
        }
        p.calls = std::move(s.calls);
        model_->paths.push_back(std::move(p));
    }

    // ---- steps and decisions -------------------------------------------
    void begin_step(State& s, const std::vector<bool>& script) {
        st_ = &s;
        script_ = &script;
        taken_.clear();
    }

    void run_step(const detail::CfgStep& step) {
        if (step.decl) {
            const frontend::Declarator& d = *step.decl;
            const frontend::VarInfo& v = fn_.vars[static_cast<std::size_t>(d.var_id)];
            if (d.init) {
                const SymValue val = convert(rvalue(*d.init), d.init->type, v.type);
                write(var_lvalue(d.var_id), val);
            } else if (!v.memory_resident()) {
                st_->env[static_cast<std::size_t>(d.var_id)] = x_.constant(0, v.type.value_width());
            }
            return;
        }
        rvalue(*step.expr);
    }

    bool decide(SymValue c) {
        if (c->is_const()) return c->value != 0;
        if (has_atom(*st_, c)) return true;
        const SymValue nc = x_.logical_not(c);
        if (has_atom(*st_, nc)) return false;
        bool v = true;
        if (taken_.size() < script_->size()) {
            v = (*script_)[taken_.size()];
        } else {
            std::vector<bool> alt = taken_;
            alt.push_back(false);
            alts_.push_back(std::move(alt));
        }
        taken_.push_back(v);
        st_->atoms.push_back(v ? c : nc);
        return v;
    }

    // ---- values --------------------------------------------------------
    SymValue fit(SymValue v, int bits) {
        if (v->width == bits) return v;
        if (v->width > bits) return x_.extract(v, bits - 1, 0);
        return x_.zext(v, bits);
    }

    SymValue convert(SymValue v, const CType& from, const CType& to) {
        if (to.is_void() || !v) return nullptr;
        const int tw = to.value_width();
        if (v->width == tw) return v;
        if (v->width > tw) return x_.extract(v, tw - 1, 0);
        return from.is_signed() ? x_.sext(v, tw) : x_.zext(v, tw);
    }

    SymValue as_int(SymValue b) { return x_.zext(b, 32); }

    SymValue to_index(SymValue v, const CType& t) { return convert(v, t, frontend::kLong); }

    LValue var_lvalue(int var_id) {
        const frontend::VarInfo& v = fn_.vars[static_cast<std::size_t>(var_id)];
        LValue lv;
        lv.type = v.type;
        if (v.memory_resident()) {
            lv.addr = x_.constant(layout_.var_address[static_cast<std::size_t>(var_id)], 64);
        } else {
            lv.var = var_id;
        }
        return lv;
    }

    SymValue read(const LValue& lv) {
        if (!lv.addr) return st_->env[static_cast<std::size_t>(lv.var)];
        const std::uint64_t n = lv.type.size_bytes();
        SymValue acc = x_.load(st_->mem, lv.addr);
        for (std::uint64_t k = 1; k < n; ++k) {
            acc = x_.concat(x_.load(st_->mem, x_.add(lv.addr, x_.constant(k, 64))), acc);
        }
        return acc;
    }

    void write(const LValue& lv, SymValue v) {
        if (!lv.addr) {
            st_->env[static_cast<std::size_t>(lv.var)] = v;
            return;
        }
        const std::uint64_t n = lv.type.size_bytes();
        for (std::uint64_t k = 0; k < n; ++k) {
            const int lo = static_cast<int>(k * 8);
            st_->mem = x_.store(st_->mem, x_.add(lv.addr, x_.constant(k, 64)), x_.extract(v, lo + 7, lo));
        }
    }

    LValue lvalue(const Expr& e) {
        switch (e.kind) {
            case ExprKind::Ident:
                if (e.ref != RefKind::Variable) break;
                return var_lvalue(e.var_id);
            case ExprKind::Unary:
                if (e.unary != UnaryOp::Deref) break;
                return LValue{-1, rvalue(e.children[0]), e.type};
            case ExprKind::Subscript: {
                const bool first_is_ptr = e.children[0].type.is_pointer();
                const SymValue a = rvalue(e.children[0]);
                const SymValue b = rvalue(e.children[1]);
                const SymValue ptr = first_is_ptr ? a : b;
                const Expr& idx = first_is_ptr ? e.children[1] : e.children[0];
                const SymValue off = x_.mul(to_index(first_is_ptr ? b : a, idx.type),
                                            x_.constant(e.op_type.pointee_size(), 64));
                return LValue{-1, x_.add(ptr, off), e.type};
            }
            default:
                break;
        }
        throw EngineFailure(FailureKind::Unsupported, "expression is not an lvalue");
    }

    SymValue address_of(const Expr& x) {
        if (x.kind == ExprKind::Ident && x.ref == RefKind::Function) return x_.constant(0, 64);
        const LValue lv = lvalue(x);
        if (!lv.addr) throw EngineFailure(FailureKind::Unsupported, "address of a register variable");
        return lv.addr;
    }

    SymValue arith(BinaryOp op, SymValue a, SymValue b, const CType& t) {
        const bool s = t.is_signed();
        switch (op) {
            case BinaryOp::Add: return x_.add(a, b);
            case BinaryOp::Sub: return x_.sub(a, b);
            case BinaryOp::Mul: return x_.mul(a, b);
            case BinaryOp::Div: return x_.binary(s ? Op::SDiv : Op::UDiv, a, b);
            case BinaryOp::Rem: return x_.binary(s ? Op::SRem : Op::URem, a, b);
            case BinaryOp::Shl: return x_.binary(Op::Shl, a, b);
            case BinaryOp::Shr: return x_.binary(s ? Op::AShr : Op::LShr, a, b);
            case BinaryOp::BitAnd: return x_.bit_and(a, b);
            case BinaryOp::BitOr: return x_.bit_or(a, b);
            case BinaryOp::BitXor: return x_.binary(Op::Xor, a, b);
            default: break;
        }
        throw EngineFailure(FailureKind::Unsupported, "operator");
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

    SymValue compare(BinaryOp op, SymValue a, SymValue b, bool s) {
        const Op lt = s ? Op::Slt : Op::Ult;
        const Op le = s ? Op::Sle : Op::Ule;
        switch (op) {
            case BinaryOp::Lt: return x_.binary(lt, a, b);
            case BinaryOp::Gt: return x_.binary(lt, b, a);
            case BinaryOp::Le: return x_.binary(le, a, b);
            case BinaryOp::Ge: return x_.binary(le, b, a);
            case BinaryOp::Eq: return x_.eq(a, b);
            case BinaryOp::Ne: return x_.logical_not(x_.eq(a, b));
            default: break;
        }
        throw EngineFailure(FailureKind::Unsupported, "comparison");
    }

    SymValue pointer_step(SymValue ptr, SymValue n, const CType& n_type, const CType& ptr_type, bool subtract) {
        SymValue off = x_.mul(to_index(n, n_type), x_.constant(ptr_type.pointee_size(), 64));
        return subtract ? x_.sub(ptr, off) : x_.add(ptr, off);
    }

    SymValue binary(const Expr& e) {
        const Expr& ea = e.children[0];
        const Expr& eb = e.children[1];
        switch (e.binary) {
            case BinaryOp::Comma:
                rvalue(ea);
                return rvalue(eb);
            case BinaryOp::LogicalAnd:
            case BinaryOp::LogicalOr: {
                const bool is_and = e.binary == BinaryOp::LogicalAnd;
                const SymValue a = x_.truthy(rvalue(ea));
                if (!eb.side_effects) {
                    const SymValue b = x_.truthy(rvalue(eb));
                    return as_int(is_and ? x_.bit_and(a, b) : x_.bit_or(a, b));
                }
                if (decide(a) != is_and) return x_.constant(is_and ? 0 : 1, 32);
                return as_int(x_.truthy(rvalue(eb)));
            }
            default:
                break;
        }
        const SymValue a = rvalue(ea);
        const SymValue b = rvalue(eb);
        const CType& t = e.op_type;
        switch (e.binary) {
            case BinaryOp::Add:
                if (ea.type.is_pointer()) return pointer_step(a, b, eb.type, ea.type, false);
                if (eb.type.is_pointer()) return pointer_step(b, a, ea.type, eb.type, false);
                break;
            case BinaryOp::Sub:
                if (ea.type.is_pointer() && eb.type.is_pointer()) {
                    return x_.binary(Op::SDiv, x_.sub(a, b), x_.constant(ea.type.pointee_size(), 64));
                }
                if (ea.type.is_pointer()) return pointer_step(a, b, eb.type, ea.type, true);
                break;
            case BinaryOp::Lt:
            case BinaryOp::Gt:
            case BinaryOp::Le:
            case BinaryOp::Ge:
            case BinaryOp::Eq:
            case BinaryOp::Ne:
                return as_int(compare(e.binary, convert(a, ea.type, t), convert(b, eb.type, t), t.is_signed()));
            default:
                break;
        }
        return arith(e.binary, convert(a, ea.type, t), convert(b, eb.type, t), t);
    }

    SymValue assign(const Expr& e) {
        const Expr& lhs = e.children[0];
        const Expr& rhs = e.children[1];
        const LValue lv = lvalue(lhs);
        const SymValue r = rvalue(rhs);
        SymValue result;
        if (e.assign == AssignOp::Assign) {
            result = convert(r, rhs.type, lhs.type);
        } else {
            const SymValue old = read(lv);
            const BinaryOp op = compound_op(e.assign);
            if (lhs.type.is_pointer()) {
                result = pointer_step(old, r, rhs.type, lhs.type, op == BinaryOp::Sub);
            } else {
                const CType& t = e.op_type;
                result = convert(arith(op, convert(old, lhs.type, t), convert(r, rhs.type, t), t), t, lhs.type);
            }
        }
        write(lv, result);
        return result;
    }

    SymValue unary(const Expr& e) {
        const Expr& x = e.children[0];
        switch (e.unary) {
            case UnaryOp::Neg:
                return x_.neg(convert(rvalue(x), x.type, e.type));
            case UnaryOp::Plus:
                return convert(rvalue(x), x.type, e.type);
            case UnaryOp::BitNot:
                return x_.bit_not(convert(rvalue(x), x.type, e.type));
            case UnaryOp::LogicalNot:
                return as_int(x_.logical_not(x_.truthy(rvalue(x))));
            case UnaryOp::Deref:
                if (e.type.is_code()) return rvalue(x);
                return read(lvalue(e));
            case UnaryOp::AddressOf:
                return address_of(x);
            case UnaryOp::PreInc:
            case UnaryOp::PreDec:
            case UnaryOp::PostInc:
            case UnaryOp::PostDec: {
                const LValue lv = lvalue(x);
                const SymValue old = read(lv);
                const std::uint64_t delta = x.type.is_pointer() ? x.type.pointee_size() : 1;
                const bool dec = e.unary == UnaryOp::PreDec || e.unary == UnaryOp::PostDec;
                const SymValue d = x_.constant(delta, old->width);
                const SymValue now = dec ? x_.sub(old, d) : x_.add(old, d);
                write(lv, now);
                return (e.unary == UnaryOp::PreInc || e.unary == UnaryOp::PreDec) ? now : old;
            }
        }
        throw EngineFailure(FailureKind::Unsupported, "unary operator");
    }

    SymValue call(const Expr& e) {
        const Expr& callee = e.children[0];
        const bool named = callee.kind == ExprKind::Ident && callee.ref == RefKind::Function;
        if (!named) rvalue(callee);
        for (std::size_t i = 1; i < e.children.size(); ++i) rvalue(e.children[i]);
        if (named && gt_.count(callee.text)) {
            ++st_->calls[callee.text];
        } else {
            ++st_->calls[kOtherCalls];
        }
        return convert(x_.constant(cfg_.external_return_value, 64), frontend::kLong, e.type);
    }

    SymValue rvalue(const Expr& e) {
        switch (e.kind) {
            case ExprKind::IntLiteral:
                return x_.constant(e.literal, e.type.value_width());
            case ExprKind::StringLiteral:
                return x_.constant(layout_.string_address[static_cast<std::size_t>(e.string_id)], 64);
            case ExprKind::Ident: {
                if (e.ref == RefKind::Constant) return x_.constant(e.literal, e.type.value_width());
                if (e.ref != RefKind::Variable) return x_.constant(0, 64);
                const frontend::VarInfo& v = fn_.vars[static_cast<std::size_t>(e.var_id)];
                if (v.array_length) return x_.constant(layout_.var_address[static_cast<std::size_t>(e.var_id)], 64);
                return read(var_lvalue(e.var_id));
            }
            case ExprKind::Unary:
                return unary(e);
            case ExprKind::Binary:
                return binary(e);
            case ExprKind::Assign:
                return assign(e);
            case ExprKind::Ternary: {
                const Expr& et = e.children[1];
                const Expr& ef = e.children[2];
                const SymValue c = x_.truthy(rvalue(e.children[0]));
                if (!et.side_effects && !ef.side_effects) {
                    const SymValue t = convert(rvalue(et), et.type, e.type);
                    const SymValue f = convert(rvalue(ef), ef.type, e.type);
                    if (!t || !f) return nullptr;
                    return x_.ite(c, t, f);
                }
                return decide(c) ? convert(rvalue(et), et.type, e.type) : convert(rvalue(ef), ef.type, e.type);
            }
            case ExprKind::Cast:
                return convert(rvalue(e.children[0]), e.children[0].type, e.written_type);
            case ExprKind::Call:
                return call(e);
            case ExprKind::Subscript:
                return read(lvalue(e));
            case ExprKind::SizeofType:
            case ExprKind::SizeofExpr:
                return x_.constant(e.literal, 64);
            case ExprKind::Concat: {
                const SymValue hi = fit(rvalue(e.children[0]), e.pseudo_in * 8);
                const SymValue lo = fit(rvalue(e.children[1]), e.pseudo_out * 8);
                return fit(x_.concat(hi, lo), e.type.value_width());
            }
            case ExprKind::SubPiece: {
                const SymValue v = fit(rvalue(e.children[0]), e.pseudo_in * 8);
                rvalue(e.children[1]);
                const int lo = static_cast<int>(e.literal) * 8;
                return fit(x_.extract(v, lo + e.pseudo_out * 8 - 1, lo), e.type.value_width());
            }
        }
        throw EngineFailure(FailureKind::Unsupported, "expression kind");
    }

    const FunctionAst& fn_;
    const NameSet& gt_;
    const EngineConfig& cfg_;
    ExprContext& x_;
    MemoryLayout layout_;
    detail::Cfg graph_;

    SymbolicModel* model_ = nullptr;
    std::vector<WorkItem> work_;
    int paths_seen_ = 0;
    std::chrono::steady_clock::time_point deadline_;

    State* st_ = nullptr;
    const std::vector<bool>* script_ = nullptr;
    std::vector<bool> taken_;
    std::vector<std::vector<bool>> alts_;
};

}  // namespace

SymbolicModel build_models(const FunctionAst& ast, const NameSet& ground_truth, const EngineConfig& cfg,
                           std::shared_ptr<ExprContext> ctx) {
    cfg.validate();
    SymbolicModel model;
    model.ctx = ctx ? std::move(ctx) : std::make_shared<ExprContext>();
    model.return_type = ast.return_type;
    for (const frontend::Param& p : ast.params) model.param_types.push_back(p.type);
    model.ground_truth = ground_truth;
    Engine(ast, ground_truth, cfg, *model.ctx).run(model);
    return model;
}

nlohmann::json to_json(const SymbolicModel& model) {
    nlohmann::json paths = nlohmann::json::array();
    for (std::size_t i = 0; i < model.paths.size(); ++i) {
        const ModelPath& p = model.paths[i];
        nlohmann::json counts = nlohmann::json::object();
        for (const auto& [name, n] : p.calls) counts[name] = n;
        paths.push_back({{"index", i},
                         {"condition", to_text(p.condition)},
                         {"return", p.ret ? nlohmann::json(to_text(p.ret)) : nlohmann::json(nullptr)},
                         {"calls", counts}});
    }
    return {{"explored_complete", model.explored_complete},
            {"return_type", frontend::to_string(model.return_type)},
            {"paths", paths}};
}

}  // namespace dscore::symbolic
