#pragma once

#include "dscore/frontend/ctype.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dscore::frontend {

struct SourceLoc {
    int line = 0;
    int column = 0;
};

/// Malformed input: unterminated construct, unknown token, unexpected token.
class ParseError : public std::runtime_error {
public:
    ParseError(SourceLoc loc, const std::string& message);
    [[nodiscard]] SourceLoc loc() const { return loc_; }
    [[nodiscard]] const std::string& message() const { return message_; }

private:
    SourceLoc loc_;
    std::string message_;
};

/// Well-formed C that falls outside the supported decompiler dialect
/// (floating point, struct member access, ...). Downstream this means Unscorable.
class DialectError : public std::runtime_error {
public:
    DialectError(SourceLoc loc, const std::string& message);
    [[nodiscard]] SourceLoc loc() const { return loc_; }
    [[nodiscard]] const std::string& message() const { return message_; }

private:
    SourceLoc loc_;
    std::string message_;
};

enum class ExprKind : std::uint8_t {
    IntLiteral,
    StringLiteral,
    Ident,
    Unary,
    Binary,
    Assign,
    Ternary,
    Cast,
    Call,
    Subscript,
    SizeofType,
    SizeofExpr,
    Concat,    // CONCATnm(hi, lo)
    SubPiece,  // SUBnm(value, byte_offset)
};

enum class UnaryOp : std::uint8_t { Neg, Plus, BitNot, LogicalNot, Deref, AddressOf, PreInc, PreDec, PostInc, PostDec };

enum class BinaryOp : std::uint8_t {
    Mul, Div, Rem, Add, Sub, Shl, Shr,
    Lt, Gt, Le, Ge, Eq, Ne,
    BitAnd, BitXor, BitOr, LogicalAnd, LogicalOr, Comma,
};

enum class AssignOp : std::uint8_t { Assign, Add, Sub, Mul, Div, Rem, Shl, Shr, And, Xor, Or };

/// How an identifier resolved during semantic analysis.
enum class RefKind : std::uint8_t { Unresolved, Variable, Function, Constant };

struct Expr {
    ExprKind kind = ExprKind::IntLiteral;
    UnaryOp unary = UnaryOp::Neg;
    BinaryOp binary = BinaryOp::Add;
    AssignOp assign = AssignOp::Assign;

    std::uint64_t literal = 0;  // IntLiteral value
    bool hex = false;           // IntLiteral spelled in hex
    std::string suffix;         // IntLiteral suffix as written (u, l, ul, ...)
    std::string text;           // identifier, callee name or string contents
    CType written_type;         // Cast / SizeofType target
    int pseudo_in = 0;          // CONCAT: high-part bytes; SUB: input bytes
    int pseudo_out = 0;         // CONCAT: low-part bytes; SUB: output bytes
    std::vector<Expr> children;
    SourceLoc loc;

    // Filled by semantic analysis.
    CType type;                 // result type (rvalue, arrays decayed)
    CType op_type;              // operand type for binary / compound ops
    RefKind ref = RefKind::Unresolved;
    int var_id = -1;            // RefKind::Variable
    int string_id = -1;         // StringLiteral
    bool side_effects = false;  // contains assignment, ++/-- or a call
};

enum class StmtKind : std::uint8_t {
    Compound, Decl, ExprStmt, If, While, DoWhile, For, Goto, Label,
    Return, Break, Continue, Switch, Case, Default, Empty,
};

struct Declarator {
    std::string name;
    CType type;
    std::optional<std::uint64_t> array_length;
    std::optional<Expr> init;
    SourceLoc loc;
    int var_id = -1;
};

/// Layout of `children` by kind:
///   Compound: statements; If: then[, else]; While/DoWhile/Switch/Label/Case/Default: body;
///   For: init (Decl, ExprStmt or Empty), body.
/// `expr` holds the condition, returned value, expression statement or case value;
/// `step` is the For increment.
struct Stmt {
    StmtKind kind = StmtKind::Empty;
    std::optional<Expr> expr;
    std::optional<Expr> step;
    std::vector<Stmt> children;
    std::vector<Declarator> decls;
    std::string label;
    SourceLoc loc;
    std::uint64_t case_value = 0;  // Case: folded label value, filled by semantic analysis
};

struct Param {
    std::string name;
    CType type;
    SourceLoc loc;
    int var_id = -1;
};

struct VarInfo {
    std::string name;
    CType type;  // declared type; arrays record the element type here
    std::optional<std::uint64_t> array_length;
    bool is_param = false;
    bool implicit = false;  // undeclared identifier or global, modelled as a zeroed 64-bit local
    bool address_taken = false;

    [[nodiscard]] bool memory_resident() const { return array_length.has_value() || address_taken; }
    [[nodiscard]] std::uint64_t storage_bytes() const {
        return array_length ? *array_length * type.size_bytes() : type.size_bytes();
    }
};

struct Prototype {
    std::string name;
    CType return_type;
};

struct FunctionAst {
    std::string name;
    CType return_type;
    std::vector<Param> params;
    Stmt body;

    // Leading declarations.
    std::map<std::string, Prototype> prototypes;
    std::map<std::string, CType> globals;

    // Filled by semantic analysis.
    std::vector<VarInfo> vars;
    std::vector<std::string> strings;            // string literal contents by string_id
    std::map<std::string, int> unresolved_symbols;  // non-call identifier uses with no declaration
    bool self_recursive = false;
};

}  // namespace dscore::frontend
