#include "dscore/frontend/lexer.hpp"

#include <array>
#include <cctype>
#include <limits>

namespace dscore::frontend {

ParseError::ParseError(SourceLoc loc, const std::string& message)
    : std::runtime_error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + message),
      loc_(loc),
      message_(message) {}

DialectError::DialectError(SourceLoc loc, const std::string& message)
    : std::runtime_error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + message),
      loc_(loc),
      message_(message) {}

namespace {

// Longest first so that maximal munch works with a linear scan.
constexpr std::array<std::string_view, 46> kPunctuators = {
    "<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
    "+=",  "-=",  "*=",  "/=", "%=", "&=", "^=", "|=", "(",  ")",  "[",  "]",  "{",  "}",
    ";",   ",",   ":",   "?",  "~",  "!",  "+",  "-",  "*",  "/",  "%",  "&",  "|",  "^",
    "<",   ">",   "=",   ".",
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_trivia();
            if (pos_ >= src_.size()) break;
            out.push_back(next());
        }
        Token end;
        end.kind = TokenKind::End;
        end.loc = here();
        end.offset = src_.size();
        out.push_back(end);
        return out;
    }

private:
    [[nodiscard]] SourceLoc here() const { return {line_, col_}; }
    [[nodiscard]] char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            const char c = peek();
            if (c == '\n') {
                advance();
                at_line_start_ = true;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '#' && at_line_start_) {
                while (pos_ < src_.size() && peek() != '\n') {
                    if (peek() == '\\' && peek(1) == '\n') advance();
                    advance();
                }
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && peek() != '\n') advance();
            } else if (c == '/' && peek(1) == '*') {
                const SourceLoc start = here();
                advance();
                advance();
                while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) advance();
                if (pos_ >= src_.size()) throw ParseError(start, "unterminated comment");
                advance();
                advance();
            } else {
                return;
            }
        }
    }

    Token next() {
        at_line_start_ = false;
        Token tok;
        tok.loc = here();
        tok.offset = pos_;
        const char c = peek();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            tok.kind = TokenKind::Identifier;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                tok.text.push_back(peek());
                advance();
            }
            return tok;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
            return number(tok);
        }
        if (c == '\'') return char_literal(tok);
        if (c == '"') return string_literal(tok);
        for (std::string_view p : kPunctuators) {
            if (src_.substr(pos_, p.size()) == p) {
                tok.kind = TokenKind::Punct;
                tok.text = std::string(p);
                for (std::size_t i = 0; i < p.size(); ++i) advance();
                return tok;
            }
        }
        throw ParseError(tok.loc, std::string("unknown token '") + c + "'");
    }

    Token number(Token tok) {
        tok.kind = TokenKind::Integer;
        std::string digits;
        int base = 10;
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            base = 16;
            tok.hex = true;
            tok.text += "0x";
            advance();
            advance();
            while (std::isxdigit(static_cast<unsigned char>(peek()))) {
                digits.push_back(peek());
                advance();
            }
            if (digits.empty()) throw ParseError(tok.loc, "malformed hex literal");
        } else {
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                digits.push_back(peek());
                advance();
            }
            if (digits.size() > 1 && digits[0] == '0') base = 8;
        }
        if (peek() == '.' || ((peek() == 'e' || peek() == 'E') && base == 10) ||
            ((peek() == 'p' || peek() == 'P') && base == 16)) {
            throw DialectError(tok.loc, "floating-point literal is not supported");
        }
        tok.text += digits;
        while (std::isalpha(static_cast<unsigned char>(peek()))) {
            const char s = static_cast<char>(std::tolower(static_cast<unsigned char>(peek())));
            if (s != 'u' && s != 'l') {
                if (s == 'f') throw DialectError(tok.loc, "floating-point literal is not supported");
                throw ParseError(tok.loc, "invalid integer suffix");
            }
            tok.suffix.push_back(s);
            tok.text.push_back(peek());
            advance();
        }
        std::uint64_t value = 0;
        for (char d : digits) {
            const int v = std::isdigit(static_cast<unsigned char>(d))
                              ? d - '0'
                              : std::tolower(static_cast<unsigned char>(d)) - 'a' + 10;
            if (v >= base) throw ParseError(tok.loc, "invalid digit in integer literal");
            if (value > (std::numeric_limits<std::uint64_t>::max() - static_cast<std::uint64_t>(v)) /
                            static_cast<std::uint64_t>(base)) {
                throw ParseError(tok.loc, "integer literal does not fit in 64 bits");
            }
            value = value * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(v);
        }
        tok.value = value;
        return tok;
    }

    std::uint64_t escape(const SourceLoc& start) {
        advance();  // backslash
        if (pos_ >= src_.size()) throw ParseError(start, "unterminated escape sequence");
        const char e = peek();
        advance();
        switch (e) {
            case 'n': return '\n';
            case 't': return '\t';
            case 'r': return '\r';
            case '0':
                if (!std::isdigit(static_cast<unsigned char>(peek()))) return 0;
                [[fallthrough]];
            case '1': case '2': case '3': case '4': case '5': case '6': case '7': {
                std::uint64_t v = static_cast<std::uint64_t>(e - '0');
                for (int i = 0; i < 2 && peek() >= '0' && peek() <= '7'; ++i) {
                    v = v * 8 + static_cast<std::uint64_t>(peek() - '0');
                    advance();
                }
                return v & 0xff;
            }
            case 'x': {
                std::uint64_t v = 0;
                while (std::isxdigit(static_cast<unsigned char>(peek()))) {
                    const char d = static_cast<char>(std::tolower(static_cast<unsigned char>(peek())));
                    v = v * 16 + static_cast<std::uint64_t>(std::isdigit(static_cast<unsigned char>(d)) ? d - '0' : d - 'a' + 10);
                    advance();
                }
                return v & 0xff;
            }
            case 'a': return 7;
            case 'b': return 8;
            case 'f': return 12;
            case 'v': return 11;
            default: return static_cast<unsigned char>(e);
        }
    }

    Token char_literal(Token tok) {
        tok.kind = TokenKind::Char;
        advance();
        if (peek() == '\'' || pos_ >= src_.size()) throw ParseError(tok.loc, "empty character literal");
        std::uint64_t v = 0;
        if (peek() == '\\') {
            v = escape(tok.loc);
        } else {
            v = static_cast<unsigned char>(peek());
            advance();
        }
        if (peek() != '\'') throw ParseError(tok.loc, "unterminated character literal");
        advance();
        tok.value = v;
        tok.text = std::string(1, static_cast<char>(v));
        return tok;
    }

    Token string_literal(Token tok) {
        tok.kind = TokenKind::String;
        advance();
        while (true) {
            if (pos_ >= src_.size() || peek() == '\n') throw ParseError(tok.loc, "unterminated string literal");
            if (peek() == '"') {
                advance();
                break;
            }
            if (peek() == '\\') {
                tok.text.push_back(static_cast<char>(escape(tok.loc)));
            } else {
                tok.text.push_back(peek());
                advance();
            }
        }
        return tok;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    bool at_line_start_ = true;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace dscore::frontend
