#include "dscore/equivalence/smtlib.hpp"

#include <algorithm>
#include <unordered_set>

namespace dscore::equivalence {

using symbolic::Op;
using symbolic::SymValue;

SmtWriter::SmtWriter(int arity) : arity_(arity) {
    for (int i = 0; i < arity_; ++i) body_ += "(declare-const arg" + std::to_string(i) + " (_ BitVec 64))\n";
}

std::string SmtWriter::sort_of(int width) {
    if (width == 0) return "(Array (_ BitVec 64) (_ BitVec 8))";
    return "(_ BitVec " + std::to_string(width) + ")";
}

std::string SmtWriter::literal(std::uint64_t value, int width) {
    return "(_ bv" + std::to_string(value & symbolic::width_mask(width)) + " " + std::to_string(width) + ")";
}

std::string SmtWriter::name_of(SymValue v, const std::string& prefix) const {
    return prefix + "n" + std::to_string(v->id);
}

std::string SmtWriter::node_term(SymValue v, const std::string& prefix) const {
    auto k = [&](int i) { return name_of(v->kid(i), prefix); };
    auto bin = [&](const char* op) { return std::string("(") + op + " " + k(0) + " " + k(1) + ")"; };
    auto pred = [&](const char* op) { return std::string("(ite (") + op + " " + k(0) + " " + k(1) + ") #b1 #b0)"; };
    switch (v->op) {
        case Op::Const: return literal(v->value, v->width);
        case Op::Arg: {
            const std::string a = "arg" + std::to_string(v->value);
            if (static_cast<int>(v->value) >= arity_) return literal(0, v->width);
            return v->width == 64 ? a : "((_ extract " + std::to_string(v->width - 1) + " 0) " + a + ")";
        }
        case Op::MemInit: return "((as const (Array (_ BitVec 64) (_ BitVec 8))) #x00)";
        case Op::Store: return "(store " + k(0) + " " + k(1) + " " + k(2) + ")";
        case Op::Load: return "(select " + k(0) + " " + k(1) + ")";
        case Op::Eq: return pred("=");
        case Op::Ult: return pred("bvult");
        case Op::Ule: return pred("bvule");
        case Op::Slt: return pred("bvslt");
        case Op::Sle: return pred("bvsle");
        case Op::Not: return "(bvnot " + k(0) + ")";
        case Op::Neg: return "(bvneg " + k(0) + ")";
        case Op::Ite: return "(ite (= " + k(0) + " #b1) " + k(1) + " " + k(2) + ")";
        case Op::Concat: return bin("concat");
        case Op::Extract:
            return "((_ extract " + std::to_string(v->lo + v->width - 1) + " " + std::to_string(v->lo) + ") " + k(0) + ")";
        case Op::ZExt:
            return "((_ zero_extend " + std::to_string(v->width - v->kid(0)->width) + ") " + k(0) + ")";
        case Op::SExt:
            return "((_ sign_extend " + std::to_string(v->width - v->kid(0)->width) + ") " + k(0) + ")";
        default:
            return bin(symbolic::op_name(v->op));
    }
}

std::vector<std::string> SmtWriter::define(const std::vector<SymValue>& roots, const std::string& prefix) {
    std::vector<SymValue> order;
    std::unordered_set<SymValue> seen;
    std::vector<SymValue> stack;
    for (SymValue r : roots) {
        if (r && seen.insert(r).second) stack.push_back(r);
    }
    while (!stack.empty()) {
        SymValue v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int i = 0; i < v->nkids; ++i) {
            if (seen.insert(v->kid(i)).second) stack.push_back(v->kid(i));
        }
    }
    std::sort(order.begin(), order.end(), [](SymValue a, SymValue b) { return a->id < b->id; });
    for (SymValue v : order) {
        if (!emitted_.insert({prefix, v->id}).second) continue;
        define_raw(name_of(v, prefix), sort_of(v->width), node_term(v, prefix));
    }
    std::vector<std::string> names;
    for (SymValue r : roots) names.push_back(r ? name_of(r, prefix) : std::string());
    return names;
}

void SmtWriter::define_raw(const std::string& name, const std::string& sort, const std::string& body) {
    body_ += "(define-fun " + name + " () " + sort + " " + body + ")\n";
}

void SmtWriter::assert_true(const std::string& bool_term) { body_ += "(assert " + bool_term + ")\n"; }

void SmtWriter::restrict_to_bytes() {
    for (int i = 0; i < arity_; ++i) {
        const std::string a = "arg" + std::to_string(i);
        assert_true("(= " + a + " ((_ sign_extend 56) ((_ extract 7 0) " + a + ")))");
    }
}

std::string SmtWriter::finish() const {
    std::string out = "(set-logic QF_ABV)\n" + body_ + "(check-sat)\n";
    if (arity_ > 0) {
        out += "(get-value (";
        for (int i = 0; i < arity_; ++i) out += (i ? " arg" : "arg") + std::to_string(i);
        out += "))\n";
    }
    out += "(exit)\n";
    return out;
}

}  // namespace dscore::equivalence
