#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace dscore::symbolic {

enum class Op : std::uint8_t {
    Const, Arg,
    MemInit, Store,  // byte-addressed memory: (Array (_ BitVec 64) (_ BitVec 8))
    Load,            // 8-bit read
    Add, Sub, Mul, UDiv, SDiv, URem, SRem, Shl, LShr, AShr, And, Or, Xor,
    Not, Neg,
    Eq, Ult, Ule, Slt, Sle,  // 1-bit results
    Ite, Concat, Extract, ZExt, SExt,
};

const char* op_name(Op op);

/// Immutable, hash-consed expression node. Identity comparison is structural
/// equality within one ExprContext.
struct Node {
    Op op = Op::Const;
    int width = 0;            // bits; 0 for memory nodes
    std::uint64_t value = 0;  // Const value, Arg index
    int lo = 0;               // Extract low bit
    int nkids = 0;
    const Node* kids[3] = {nullptr, nullptr, nullptr};
    std::size_t id = 0;       // creation order; children always have smaller ids

    [[nodiscard]] bool is_const() const { return op == Op::Const; }
    [[nodiscard]] bool is_memory() const { return op == Op::MemInit || op == Op::Store; }
    [[nodiscard]] const Node* kid(int i) const { return kids[i]; }
};

using SymValue = const Node*;

std::uint64_t width_mask(int bits);
std::uint64_t sign_extend(std::uint64_t v, int from_bits);

/// Concrete semantics of each operator on masked 64-bit carriers (SMT-LIB
/// bit-vector semantics, including division by zero and oversized shifts).
std::uint64_t apply_op(Op op, int width, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0, int arg_width = 0,
                       int lo = 0);

/// Owns nodes for one analysis. Builders fold constants and apply local
/// simplifications that preserve bit-vector semantics exactly.
class ExprContext {
public:
    ExprContext() = default;
    ExprContext(const ExprContext&) = delete;
    ExprContext& operator=(const ExprContext&) = delete;

    SymValue constant(std::uint64_t value, int width);
    SymValue arg(int index, int width = 64);
    SymValue bool_const(bool b) { return constant(b ? 1 : 0, 1); }

    SymValue mem_init();
    SymValue store(SymValue mem, SymValue addr, SymValue byte);
    SymValue load(SymValue mem, SymValue addr);

    SymValue binary(Op op, SymValue a, SymValue b);
    SymValue add(SymValue a, SymValue b) { return binary(Op::Add, a, b); }
    SymValue sub(SymValue a, SymValue b) { return binary(Op::Sub, a, b); }
    SymValue mul(SymValue a, SymValue b) { return binary(Op::Mul, a, b); }
    SymValue bit_and(SymValue a, SymValue b) { return binary(Op::And, a, b); }
    SymValue bit_or(SymValue a, SymValue b) { return binary(Op::Or, a, b); }
    SymValue eq(SymValue a, SymValue b) { return binary(Op::Eq, a, b); }
    SymValue bit_not(SymValue a);
    SymValue neg(SymValue a);
    SymValue ite(SymValue c, SymValue t, SymValue f);
    SymValue concat(SymValue hi, SymValue lo);
    SymValue extract(SymValue a, int hi, int lo);
    SymValue zext(SymValue a, int width);
    SymValue sext(SymValue a, int width);

    /// Width-1 truth value of a != 0.
    SymValue truthy(SymValue a);
    /// Boolean negation of a width-1 value.
    SymValue logical_not(SymValue a) { return bit_not(a); }

    [[nodiscard]] std::size_t size() const { return nodes_.size(); }

private:
    struct Key {
        Op op;
        int width;
        std::uint64_t value;
        int lo;
        std::size_t k0, k1, k2;
        bool operator==(const Key& o) const {
            return op == o.op && width == o.width && value == o.value && lo == o.lo && k0 == o.k0 && k1 == o.k1 &&
                   k2 == o.k2;
        }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };

    SymValue make(Op op, int width, std::uint64_t value, int lo, SymValue a = nullptr, SymValue b = nullptr,
                  SymValue c = nullptr);
    SymValue fold_load(SymValue mem, SymValue addr);

    std::deque<Node> nodes_;
    std::unordered_map<Key, const Node*, KeyHash> index_;
};

/// Evaluates nodes under a concrete argument assignment. Memoized per instance.
class Evaluator {
public:
    explicit Evaluator(std::vector<std::uint64_t> args) : args_(std::move(args)) {}
    std::uint64_t eval(SymValue v);

private:
    std::uint64_t load(SymValue mem, std::uint64_t addr);
    std::vector<std::uint64_t> args_;
    std::unordered_map<const Node*, std::uint64_t> memo_;
};

/// S-expression text, truncated after `limit` characters.
std::string to_text(SymValue v, std::size_t limit = 4000);

}  // namespace dscore::symbolic
