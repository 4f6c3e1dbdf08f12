#pragma once

#include "dscore/frontend/ast.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace dscore::symbolic::detail {

struct CfgStep {
    const frontend::Declarator* decl = nullptr;  // declaration, or
    const frontend::Expr* expr = nullptr;        // expression evaluated for effect
};

enum class TermKind : std::uint8_t { Jump, Branch, Return, Switch, End };

struct Terminator {
    TermKind kind = TermKind::End;
    const frontend::Expr* expr = nullptr;  // condition, returned value or switch quantity
    int target = -1;                        // Jump, Branch true edge, Switch default
    int target_false = -1;
    std::vector<std::pair<std::uint64_t, int>> cases;  // value at the promoted switch width
};

struct Block {
    std::vector<CfgStep> steps;
    Terminator term;
};

struct Cfg {
    std::vector<Block> blocks;
    int entry = 0;
};

/// Lowers the structured body to basic blocks. The AST must outlive the Cfg.
Cfg lower(const frontend::FunctionAst& fn);

}  // namespace dscore::symbolic::detail
