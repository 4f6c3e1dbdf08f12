#pragma once

#include "dscore/frontend/ast.hpp"

#include <map>
#include <string>
#include <string_view>

namespace dscore::frontend {

/// Callee name -> number of call sites.
using NameMultiset = std::map<std::string, int>;

struct SourceMetrics {
    int effective_lines = 0;  // lines with a non-whitespace character
    int total_lines = 0;
    int cyclomatic_complexity = 1;
    int token_count = 0;
    NameMultiset external_call_names;
};

/// Decision points + 1, where decision points are if, while, do-while, for,
/// ?:, && and || and case labels.
int cyclomatic_complexity(const FunctionAst& ast);

SourceMetrics compute_metrics(const FunctionAst& ast, std::string_view src);

/// Call sites whose callee is a name with no local definition. Calls through
/// local function pointers and self calls are excluded.
NameMultiset collect_external_calls(const FunctionAst& ast);

int count_lines(std::string_view src, bool non_blank_only);

}  // namespace dscore::frontend
