#pragma once

#include "dscore/frontend/ast.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dscore::frontend {

enum class TokenKind : std::uint8_t { Identifier, Integer, Char, String, Punct, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;  // spelling; for String the decoded contents
    std::uint64_t value = 0;
    bool hex = false;
    std::string suffix;
    SourceLoc loc;
    std::size_t offset = 0;  // byte offset of the first character in the source
};

/// Splits source into tokens. Comments and preprocessor lines are dropped.
/// Throws ParseError on unknown characters or unterminated literals and
/// DialectError on floating-point literals.
std::vector<Token> tokenize(std::string_view source);

}  // namespace dscore::frontend
