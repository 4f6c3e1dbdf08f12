#pragma once

#include "dscore/frontend/ast.hpp"

#include <nlohmann/json.hpp>

namespace dscore::frontend {

/// JSON dump of an analysed tree. Every node has `kind` and `children`;
/// expression nodes add `width` (bits of the result value) and literals add
/// `literal`. Operators, names and types appear as `op`, `name`, `type`.
nlohmann::json to_json(const FunctionAst& fn);
nlohmann::json to_json(const Stmt& s);
nlohmann::json to_json(const Expr& e);

}  // namespace dscore::frontend
