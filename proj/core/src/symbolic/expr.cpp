#include "dscore/symbolic/expr.hpp"

#include <stdexcept>
#include <utility>

namespace dscore::symbolic {

const char* op_name(Op op) {
    switch (op) {
        case Op::Const: return "const";
        case Op::Arg: return "arg";
        case Op::MemInit: return "mem0";
        case Op::Store: return "store";
        case Op::Load: return "select";
        case Op::Add: return "bvadd";
        case Op::Sub: return "bvsub";
        case Op::Mul: return "bvmul";
        case Op::UDiv: return "bvudiv";
        case Op::SDiv: return "bvsdiv";
        case Op::URem: return "bvurem";
        case Op::SRem: return "bvsrem";
        case Op::Shl: return "bvshl";
        case Op::LShr: return "bvlshr";
        case Op::AShr: return "bvashr";
        case Op::And: return "bvand";
        case Op::Or: return "bvor";
        case Op::Xor: return "bvxor";
        case Op::Not: return "bvnot";
        case Op::Neg: return "bvneg";
        case Op::Eq: return "=";
        case Op::Ult: return "bvult";
        case Op::Ule: return "bvule";
        case Op::Slt: return "bvslt";
        case Op::Sle: return "bvsle";
        case Op::Ite: return "ite";
        case Op::Concat: return "concat";
        case Op::Extract: return "extract";
        case Op::ZExt: return "zero_extend";
        case Op::SExt: return "sign_extend";
    }
    return "?";
}

std::uint64_t width_mask(int bits) { return bits >= 64 ? ~0ULL : ((1ULL << bits) - 1); }

std::uint64_t sign_extend(std::uint64_t v, int from_bits) {
    if (from_bits >= 64) return v;
    v &= width_mask(from_bits);
    if ((v >> (from_bits - 1)) & 1) v |= ~width_mask(from_bits);
    return v;
}

namespace {

bool msb(std::uint64_t v, int w) { return ((v >> (w - 1)) & 1) != 0; }

std::uint64_t udiv(std::uint64_t a, std::uint64_t b, int w) { return b == 0 ? width_mask(w) : a / b; }
std::uint64_t urem(std::uint64_t a, std::uint64_t b) { return b == 0 ? a : a % b; }
std::uint64_t negate(std::uint64_t a, int w) { return (~a + 1) & width_mask(w); }

}  // namespace

std::uint64_t apply_op(Op op, int w, std::uint64_t a, std::uint64_t b, std::uint64_t c, int arg_width, int lo) {
    const std::uint64_t m = width_mask(w);
    switch (op) {
        case Op::Add: return (a + b) & m;
        case Op::Sub: return (a - b) & m;
        case Op::Mul: return (a * b) & m;
        case Op::UDiv: return udiv(a, b, w);
        case Op::URem: return urem(a, b);
        case Op::SDiv: {
            const bool sa = msb(a, w);
            const bool sb = msb(b, w);
            const std::uint64_t ua = sa ? negate(a, w) : a;
            const std::uint64_t ub = sb ? negate(b, w) : b;
            const std::uint64_t q = udiv(ua, ub, w);
            return sa != sb ? negate(q, w) : q;
        }
        case Op::SRem: {
            const bool sa = msb(a, w);
            const bool sb = msb(b, w);
            const std::uint64_t ua = sa ? negate(a, w) : a;
            const std::uint64_t ub = sb ? negate(b, w) : b;
            const std::uint64_t r = urem(ua, ub);
            return sa ? negate(r, w) : r;
        }
        case Op::Shl: return b >= static_cast<std::uint64_t>(w) ? 0 : (a << b) & m;
        case Op::LShr: return b >= static_cast<std::uint64_t>(w) ? 0 : a >> b;
        case Op::AShr: {
            const std::uint64_t s = sign_extend(a, w);
            if (b >= static_cast<std::uint64_t>(w)) return msb(a, w) ? m : 0;
            return (s >> b | (msb(a, w) && b > 0 ? ~(~0ULL >> b) : 0)) & m;
        }
        case Op::And: return a & b;
        case Op::Or: return a | b;
        case Op::Xor: return a ^ b;
        case Op::Not: return ~a & m;
        case Op::Neg: return negate(a, w);
        case Op::Eq: return a == b ? 1 : 0;
        case Op::Ult: return a < b ? 1 : 0;
        case Op::Ule: return a <= b ? 1 : 0;
        case Op::Slt:
            return static_cast<std::int64_t>(sign_extend(a, arg_width)) < static_cast<std::int64_t>(sign_extend(b, arg_width)) ? 1 : 0;
        case Op::Sle:
            return static_cast<std::int64_t>(sign_extend(a, arg_width)) <= static_cast<std::int64_t>(sign_extend(b, arg_width)) ? 1 : 0;
        case Op::Ite: return a ? b : c;
        case Op::Concat: return ((a << arg_width) | b) & m;
        case Op::Extract: return (a >> lo) & m;
        case Op::ZExt: return a & m;
        case Op::SExt: return sign_extend(a, arg_width) & m;
        default: break;
    }
    throw std::logic_error(std::string("apply_op: not a value operator: ") + op_name(op));
}

std::size_t ExprContext::KeyHash::operator()(const Key& k) const {
    std::size_t h = static_cast<std::size_t>(k.op) * 0x9e3779b97f4a7c15ULL;
    auto mix = [&](std::uint64_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(static_cast<std::uint64_t>(k.width));
    mix(k.value);
    mix(static_cast<std::uint64_t>(k.lo));
    mix(k.k0);
    mix(k.k1);
    mix(k.k2);
    return h;
}

SymValue ExprContext::make(Op op, int width, std::uint64_t value, int lo, SymValue a, SymValue b, SymValue c) {
    const Key key{op, width, value, lo, a ? a->id + 1 : 0, b ? b->id + 1 : 0, c ? c->id + 1 : 0};
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    Node& n = nodes_.emplace_back();
    n.op = op;
    n.width = width;
    n.value = value;
    n.lo = lo;
    n.kids[0] = a;
    n.kids[1] = b;
    n.kids[2] = c;
    n.nkids = c ? 3 : b ? 2 : a ? 1 : 0;
    n.id = nodes_.size() - 1;
    index_.emplace(key, &n);
    return &n;
}

SymValue ExprContext::constant(std::uint64_t value, int width) {
    if (width < 1 || width > 64) throw std::logic_error("constant width out of range");
    return make(Op::Const, width, value & width_mask(width), 0);
}

SymValue ExprContext::arg(int index, int width) { return make(Op::Arg, width, static_cast<std::uint64_t>(index), 0); }

SymValue ExprContext::mem_init() { return make(Op::MemInit, 0, 0, 0); }

namespace {

// Splits an address into (base, constant offset); base is null for constants.
std::pair<SymValue, std::uint64_t> split_address(SymValue a) {
    if (a->is_const()) return {nullptr, a->value};
    if (a->op == Op::Add && a->kid(1)->is_const()) return {a->kid(0), a->kid(1)->value};
    return {a, 0};
}

bool definitely_distinct(SymValue a, SymValue b) {
    if (a == b) return false;
    const auto [ba, oa] = split_address(a);
    const auto [bb, ob] = split_address(b);
    return ba == bb && oa != ob;
}

}  // namespace

SymValue ExprContext::store(SymValue mem, SymValue addr, SymValue byte) {
    if (!mem->is_memory() || addr->width != 64 || byte->width != 8) throw std::logic_error("store: bad operand sorts");
    if (mem->op == Op::Store && mem->kid(1) == addr) mem = mem->kid(0);
    return make(Op::Store, 0, 0, 0, mem, addr, byte);
}

SymValue ExprContext::fold_load(SymValue mem, SymValue addr) {
    SymValue m = mem;
    while (true) {
        if (m->op == Op::MemInit) return constant(0, 8);
        if (m->kid(1) == addr) return m->kid(2);
        if (!definitely_distinct(m->kid(1), addr)) break;
        m = m->kid(0);
    }
    return make(Op::Load, 8, 0, 0, m, addr);
}

SymValue ExprContext::load(SymValue mem, SymValue addr) {
    if (!mem->is_memory() || addr->width != 64) throw std::logic_error("load: bad operand sorts");
    return fold_load(mem, addr);
}

namespace {

bool commutative(Op op) {
    return op == Op::Add || op == Op::Mul || op == Op::And || op == Op::Or || op == Op::Xor || op == Op::Eq;
}

bool is_predicate(Op op) {
    return op == Op::Eq || op == Op::Ult || op == Op::Ule || op == Op::Slt || op == Op::Sle;
}

}  // namespace

SymValue ExprContext::binary(Op op, SymValue a, SymValue b) {
    if (a->width != b->width || a->width == 0) {
        throw std::logic_error(std::string("width mismatch in ") + op_name(op) + ": " + std::to_string(a->width) +
                               " vs " + std::to_string(b->width));
    }
    const int w = a->width;
    const int rw = is_predicate(op) ? 1 : w;
    if (a->is_const() && b->is_const()) return constant(apply_op(op, rw, a->value, b->value, 0, w), rw);
    if (commutative(op)) {
        if (a->is_const() || (!b->is_const() && a->id > b->id)) std::swap(a, b);
    }
    const std::uint64_t ones = width_mask(w);
    switch (op) {
        case Op::Add:
            if (b->is_const() && b->value == 0) return a;
            if (b->is_const() && a->op == Op::Add && a->kid(1)->is_const()) {
                return add(a->kid(0), constant(a->kid(1)->value + b->value, w));
            }
            break;
        case Op::Sub:
            if (a == b) return constant(0, w);
            if (b->is_const()) return add(a, constant(~b->value + 1, w));
            break;
        case Op::Mul:
            if (b->is_const() && b->value == 0) return b;
            if (b->is_const() && b->value == 1) return a;
            break;
        case Op::And:
            if (b->is_const() && b->value == 0) return b;
            if (b->is_const() && b->value == ones) return a;
            if (a == b) return a;
            break;
        case Op::Or:
            if (b->is_const() && b->value == 0) return a;
            if (b->is_const() && b->value == ones) return b;
            if (a == b) return a;
            break;
        case Op::Xor:
            if (b->is_const() && b->value == 0) return a;
            if (a == b) return constant(0, w);
            break;
        case Op::Eq:
            if (a == b) return bool_const(true);
            if (w == 1 && b->is_const()) return b->value ? a : bit_not(a);
            break;
        case Op::Ult:
            if (b->is_const() && b->value == 0) return bool_const(false);
            if (a == b) return bool_const(false);
            break;
        case Op::Ule:
            if (a->is_const() && a->value == 0) return bool_const(true);
            if (a == b) return bool_const(true);
            break;
        case Op::Slt:
            if (a == b) return bool_const(false);
            break;
        case Op::Sle:
            if (a == b) return bool_const(true);
            break;
        case Op::Shl:
        case Op::LShr:
        case Op::AShr:
            if (b->is_const() && b->value == 0) return a;
            if (op == Op::AShr && a->op == Op::ZExt) return binary(Op::LShr, a, b);  // sign bit known zero
            if (op != Op::AShr && b->is_const() && b->value >= static_cast<std::uint64_t>(w)) return constant(0, w);
            if (op == Op::LShr && b->is_const() && a->op == Op::ZExt) {
                // zext(y) >> c keeps only the high bits of y.
                const SymValue y = a->kid(0);
                if (b->value >= static_cast<std::uint64_t>(y->width)) return constant(0, w);
                return zext(extract(y, y->width - 1, static_cast<int>(b->value)), w);
            }
            break;
        case Op::SDiv:
        case Op::SRem:
            // Non-negative operands divide the same either way.
            if (a->op == Op::ZExt && b->is_const() && (b->value >> (w - 1)) == 0) {
                return binary(op == Op::SDiv ? Op::UDiv : Op::URem, a, b);
            }
            if (op == Op::SDiv && b->is_const() && b->value == 1) return a;
            break;
        case Op::UDiv:
            if (b->is_const() && b->value != 0 && (b->value & (b->value - 1)) == 0) {
                return binary(Op::LShr, a, constant(static_cast<std::uint64_t>(__builtin_ctzll(b->value)), w));
            }
            break;
        case Op::URem:
            if (b->is_const() && b->value != 0 && (b->value & (b->value - 1)) == 0) {
                return bit_and(a, constant(b->value - 1, w));
            }
            break;
        default:
            break;
    }
    return make(op, rw, 0, 0, a, b);
}

SymValue ExprContext::bit_not(SymValue a) {
    if (a->is_const()) return constant(~a->value, a->width);
    if (a->op == Op::Not) return a->kid(0);
    return make(Op::Not, a->width, 0, 0, a);
}

SymValue ExprContext::neg(SymValue a) {
    if (a->is_const()) return constant(~a->value + 1, a->width);
    if (a->op == Op::Neg) return a->kid(0);
    return make(Op::Neg, a->width, 0, 0, a);
}

SymValue ExprContext::ite(SymValue c, SymValue t, SymValue f) {
    if (c->width != 1 || t->width != f->width) throw std::logic_error("ite: bad operand widths");
    if (c->is_const()) return c->value ? t : f;
    if (t == f) return t;
    if (t->width == 1 && t->is_const() && f->is_const()) return t->value ? c : bit_not(c);
    if (c->op == Op::Not) return ite(c->kid(0), f, t);
    return make(Op::Ite, t->width, 0, 0, c, t, f);
}

SymValue ExprContext::concat(SymValue hi, SymValue lo) {
    const int w = hi->width + lo->width;
    if (w > 64) throw std::logic_error("concat wider than 64 bits");
    if (hi->is_const() && lo->is_const()) return constant((hi->value << lo->width) | lo->value, w);
    if (hi->is_const() && hi->value == 0) return zext(lo, w);
    if (hi->op == Op::Extract && lo->op == Op::Extract && hi->kid(0) == lo->kid(0) &&
        hi->lo == lo->lo + lo->width) {
        return extract(hi->kid(0), hi->lo + hi->width - 1, lo->lo);
    }
    return make(Op::Concat, w, 0, 0, hi, lo);
}

SymValue ExprContext::extract(SymValue a, int hi, int lo) {
    const int w = hi - lo + 1;
    if (lo < 0 || hi >= a->width || w < 1) throw std::logic_error("extract out of range");
    if (lo == 0 && hi == a->width - 1) return a;
    if (a->is_const()) return constant(a->value >> lo, w);
    switch (a->op) {
        case Op::Extract:
            return extract(a->kid(0), a->lo + hi, a->lo + lo);
        case Op::Concat: {
            const SymValue h = a->kid(0);
            const SymValue l = a->kid(1);
            if (hi < l->width) return extract(l, hi, lo);
            if (lo >= l->width) return extract(h, hi - l->width, lo - l->width);
            break;
        }
        case Op::ZExt: {
            const SymValue x = a->kid(0);
            if (hi < x->width) return extract(x, hi, lo);
            if (lo >= x->width) return constant(0, w);
            if (lo == 0) return zext(x, w);
            break;
        }
        case Op::SExt: {
            const SymValue x = a->kid(0);
            if (hi < x->width) return extract(x, hi, lo);
            break;
        }
        default:
            break;
    }
    return make(Op::Extract, w, 0, lo, a);
}

SymValue ExprContext::zext(SymValue a, int width) {
    if (width == a->width) return a;
    if (width < a->width) throw std::logic_error("zext to a narrower width");
    if (a->is_const()) return constant(a->value, width);
    if (a->op == Op::ZExt) return zext(a->kid(0), width);
    return make(Op::ZExt, width, 0, 0, a);
}

SymValue ExprContext::sext(SymValue a, int width) {
    if (width == a->width) return a;
    if (width < a->width) throw std::logic_error("sext to a narrower width");
    if (a->is_const()) return constant(sign_extend(a->value, a->width), width);
    if (a->op == Op::SExt) return sext(a->kid(0), width);
    if (a->op == Op::ZExt) return zext(a->kid(0), width);
    return make(Op::SExt, width, 0, 0, a);
}

SymValue ExprContext::truthy(SymValue a) {
    if (a->width == 1) return a;
    return bit_not(eq(a, constant(0, a->width)));
}

std::uint64_t Evaluator::load(SymValue mem, std::uint64_t addr) {
    SymValue m = mem;
    while (m->op == Op::Store) {
        if (eval(m->kid(1)) == addr) return eval(m->kid(2));
        m = m->kid(0);
    }
    return 0;
}

std::uint64_t Evaluator::eval(SymValue v) {
    if (auto it = memo_.find(v); it != memo_.end()) return it->second;
    std::uint64_t r = 0;
    switch (v->op) {
        case Op::Const:
            r = v->value;
            break;
        case Op::Arg:
            r = v->value < args_.size() ? args_[v->value] & width_mask(v->width) : 0;
            break;
        case Op::MemInit:
        case Op::Store:
            throw std::logic_error("memory node has no scalar value");
        case Op::Load:
            r = load(v->kid(0), eval(v->kid(1)));
            break;
        case Op::Ite:
            r = eval(v->kid(0)) ? eval(v->kid(1)) : eval(v->kid(2));
            break;
        case Op::Not:
        case Op::Neg:
            r = apply_op(v->op, v->width, eval(v->kid(0)));
            break;
        case Op::Extract:
            r = apply_op(v->op, v->width, eval(v->kid(0)), 0, 0, v->kid(0)->width, v->lo);
            break;
        case Op::ZExt:
        case Op::SExt:
            r = apply_op(v->op, v->width, eval(v->kid(0)), 0, 0, v->kid(0)->width);
            break;
        case Op::Concat:
            r = apply_op(v->op, v->width, eval(v->kid(0)), eval(v->kid(1)), 0, v->kid(1)->width);
            break;
        default: {
            const int w = v->kid(0)->width;
            r = apply_op(v->op, is_predicate(v->op) ? 1 : w, eval(v->kid(0)), eval(v->kid(1)), 0, w);
            break;
        }
    }
    memo_.emplace(v, r);
    return r;
}

namespace {

void render(SymValue v, std::string& out, std::size_t limit) {
    if (out.size() > limit) return;
    switch (v->op) {
        case Op::Const: {
            out += "#x" + std::to_string(v->width) + ":";
            char buf[24];
            std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(v->value));
            out += buf;
            return;
        }
        case Op::Arg:
            out += "arg" + std::to_string(v->value);
            return;
        case Op::MemInit:
            out += "mem0";
            return;
        default:
            break;
    }
    out += "(";
    out += op_name(v->op);
    if (v->op == Op::Extract) out += " " + std::to_string(v->lo + v->width - 1) + " " + std::to_string(v->lo);
    if (v->op == Op::ZExt || v->op == Op::SExt) out += " " + std::to_string(v->width);
    for (int i = 0; i < v->nkids; ++i) {
        out += " ";
        render(v->kid(i), out, limit);
    }
    out += ")";
}

}  // namespace

std::string to_text(SymValue v, std::size_t limit) {
    std::string out;
    render(v, out, limit);
    if (out.size() > limit) {
        out.resize(limit);
        out += "...";
    }
    return out;
}

}  // namespace dscore::symbolic
