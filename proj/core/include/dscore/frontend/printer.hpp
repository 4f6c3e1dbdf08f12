#pragma once

#include "dscore/frontend/ast.hpp"

#include <string>

namespace dscore::frontend {

/// Renders the function (leading prototypes and globals first) as C text.
/// Every compound subexpression is parenthesised, so re-parsing the output
/// reproduces the same tree.
std::string print_function(const FunctionAst& fn);

std::string print_expr(const Expr& e);

const char* spelling(UnaryOp op);
const char* spelling(BinaryOp op);
const char* spelling(AssignOp op);
const char* kind_name(ExprKind kind);
const char* kind_name(StmtKind kind);

/// Structural comparison of two syntax trees, ignoring source locations and
/// semantic annotations.
bool same_structure(const FunctionAst& a, const FunctionAst& b);

}  // namespace dscore::frontend
