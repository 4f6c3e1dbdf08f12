#pragma once

#include "dscore/frontend/ast.hpp"

#include <string_view>

namespace dscore::frontend {

/// Parses one function definition plus optional leading typedefs, prototypes
/// and global declarations, then runs semantic analysis (name resolution,
/// typing, storage classification).
///
/// Throws ParseError for malformed text and DialectError for constructs outside
/// the supported subset.
FunctionAst parse_function(std::string_view source);

/// Parsing only; the result carries no semantic annotations.
FunctionAst parse_function_syntax(std::string_view source);

/// Resolves identifiers, assigns variable ids, types every expression and
/// checks goto targets. Idempotent on an already analysed tree.
void analyze(FunctionAst& fn);

/// True when `name` spells a CONCATnm or SUBnm pseudo-operation; the byte
/// sizes are written to the out parameters.
bool is_concat_name(std::string_view name, int& hi_bytes, int& lo_bytes);
bool is_subpiece_name(std::string_view name, int& in_bytes, int& out_bytes);

}  // namespace dscore::frontend
