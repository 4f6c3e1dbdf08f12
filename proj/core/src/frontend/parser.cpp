#include "dscore/frontend/parser.hpp"

#include "dscore/frontend/lexer.hpp"

#include <cctype>
#include <set>
#include <unordered_map>

namespace dscore::frontend {

namespace {

const std::unordered_map<std::string, CType>& builtin_typedefs() {
    static const std::unordered_map<std::string, CType> table = {
        {"undefined", CType::unsigned_int(8)},   {"undefined1", CType::unsigned_int(8)},
        {"undefined2", CType::unsigned_int(16)}, {"undefined4", CType::unsigned_int(32)},
        {"undefined8", CType::unsigned_int(64)}, {"byte", CType::unsigned_int(8)},
        {"sbyte", CType::signed_int(8)},         {"uchar", CType::unsigned_int(8)},
        {"ushort", CType::unsigned_int(16)},     {"uint", CType::unsigned_int(32)},
        {"ulong", CType::unsigned_int(64)},      {"longlong", CType::signed_int(64)},
        {"ulonglong", CType::unsigned_int(64)},  {"word", CType::unsigned_int(16)},
        {"dword", CType::unsigned_int(32)},      {"qword", CType::unsigned_int(64)},
        {"bool", CType::unsigned_int(8)},        {"_Bool", CType::unsigned_int(8)},
        {"size_t", CType::unsigned_int(64)},     {"ssize_t", CType::signed_int(64)},
        {"intptr_t", CType::signed_int(64)},     {"uintptr_t", CType::unsigned_int(64)},
        {"int8_t", CType::signed_int(8)},        {"uint8_t", CType::unsigned_int(8)},
        {"int16_t", CType::signed_int(16)},      {"uint16_t", CType::unsigned_int(16)},
        {"int32_t", CType::signed_int(32)},      {"uint32_t", CType::unsigned_int(32)},
        {"int64_t", CType::signed_int(64)},      {"uint64_t", CType::unsigned_int(64)},
        {"code", CType::code_type()},            {"FILE", CType::void_type()},
    };
    return table;
}

const std::set<std::string, std::less<>>& qualifiers() {
    static const std::set<std::string, std::less<>> q = {
        "const", "volatile", "static", "extern", "register", "inline", "__inline", "restrict",
        "__restrict", "__cdecl", "__stdcall", "__fastcall", "__thiscall", "auto",
    };
    return q;
}

const std::set<std::string, std::less<>>& base_type_words() {
    static const std::set<std::string, std::less<>> w = {
        "void", "char", "short", "int", "long", "signed", "unsigned", "struct", "union", "enum", "float", "double",
    };
    return w;
}

bool parse_two_digits(std::string_view name, std::string_view prefix, int& a, int& b) {
    if (name.size() != prefix.size() + 2 || name.substr(0, prefix.size()) != prefix) return false;
    const char x = name[prefix.size()];
    const char y = name[prefix.size() + 1];
    if (!std::isdigit(static_cast<unsigned char>(x)) || !std::isdigit(static_cast<unsigned char>(y))) return false;
    a = x - '0';
    b = y - '0';
    return a > 0 && b > 0;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    FunctionAst translation_unit() {
        FunctionAst fn;
        bool have_definition = false;
        while (!at_end()) {
            if (accept(";")) continue;
            if (peek_is("typedef")) {
                typedef_decl();
                continue;
            }
            const SourceLoc loc = cur().loc;
            const bool is_extern = peek_is("extern");
            CType base = decl_specifiers();
            CType type = pointer_suffix(base);
            const Token& name_tok = expect_identifier("declaration name");
            const std::string name = name_tok.text;
            if (accept("(")) {
                bool variadic = false;
                std::vector<Param> params = parameter_list(variadic);
                if (peek_is("{")) {
                    if (have_definition) throw DialectError(loc, "more than one function definition");
                    have_definition = true;
                    fn.name = name;
                    fn.return_type = type;
                    fn.params = std::move(params);
                    fn.body = compound();
                    for (const Param& p : fn.params) {
                        if (p.name.empty()) throw ParseError(p.loc, "parameter name omitted in function definition");
                    }
                } else {
                    expect(";");
                    fn.prototypes[name] = Prototype{name, type};
                }
                continue;
            }
            if (have_definition && !is_extern) {
                throw DialectError(loc, "declarations after the function definition are not supported");
            }
            // Global variable(s).
            std::string gname = name;
            CType gtype = type;
            while (true) {
                if (accept("[")) {
                    if (!peek_is("]")) expression();
                    expect("]");
                    gtype = gtype.address_of();
                }
                if (accept("=")) assignment();
                fn.globals[gname] = gtype;
                if (!accept(",")) break;
                gtype = pointer_suffix(base);
                gname = expect_identifier("declaration name").text;
            }
            expect(";");
        }
        if (!have_definition) throw ParseError(cur().loc, "no function definition found");
        return fn;
    }

private:
    // ---- token helpers -------------------------------------------------
    [[nodiscard]] const Token& cur() const { return toks_[pos_]; }
    [[nodiscard]] const Token& peek_tok(std::size_t n) const {
        return toks_[std::min(pos_ + n, toks_.size() - 1)];
    }
    [[nodiscard]] bool at_end() const { return cur().kind == TokenKind::End; }
    [[nodiscard]] bool peek_is(std::string_view text) const {
        const Token& t = cur();
        return (t.kind == TokenKind::Punct || t.kind == TokenKind::Identifier) && t.text == text;
    }
    [[nodiscard]] bool peek_is(std::size_t n, std::string_view text) const {
        const Token& t = peek_tok(n);
        return (t.kind == TokenKind::Punct || t.kind == TokenKind::Identifier) && t.text == text;
    }
    const Token& take() {
        const Token& t = toks_[pos_];
        if (t.kind != TokenKind::End) ++pos_;
        return t;
    }
    bool accept(std::string_view text) {
        if (peek_is(text)) {
            take();
            return true;
        }
        return false;
    }
    void expect(std::string_view text) {
        if (!accept(text)) {
            if (at_end()) throw ParseError(cur().loc, "unexpected end of input, expected '" + std::string(text) + "'");
            throw ParseError(cur().loc, "expected '" + std::string(text) + "' before '" + cur().text + "'");
        }
    }
    const Token& expect_identifier(std::string_view what) {
        if (cur().kind != TokenKind::Identifier) {
            if (at_end()) throw ParseError(cur().loc, "unexpected end of input, expected " + std::string(what));
            throw ParseError(cur().loc, "expected " + std::string(what) + " before '" + cur().text + "'");
        }
        return take();
    }

    // ---- types ---------------------------------------------------------
    [[nodiscard]] bool is_type_name(const Token& t) const {
        if (t.kind != TokenKind::Identifier) return false;
        return qualifiers().count(t.text) != 0 || base_type_words().count(t.text) != 0 ||
               builtin_typedefs().count(t.text) != 0 || user_typedefs_.count(t.text) != 0;
    }
    [[nodiscard]] bool type_starts() const { return is_type_name(cur()); }

    CType decl_specifiers() {
        const SourceLoc loc = cur().loc;
        bool saw_signed = false;
        bool saw_unsigned = false;
        int longs = 0;
        bool saw_short = false;
        bool saw_char = false;
        bool saw_int = false;
        std::optional<CType> named;
        bool any = false;
        while (cur().kind == TokenKind::Identifier) {
            const std::string& w = cur().text;
            if (qualifiers().count(w)) {
                take();
                continue;
            }
            if (w == "float" || w == "double") throw DialectError(cur().loc, "floating-point type '" + w + "' is not supported");
            if (w == "signed") { saw_signed = true; any = true; take(); continue; }
            if (w == "unsigned") { saw_unsigned = true; any = true; take(); continue; }
            if (w == "long") { ++longs; any = true; take(); continue; }
            if (w == "short") { saw_short = true; any = true; take(); continue; }
            if (w == "char") { saw_char = true; any = true; take(); continue; }
            if (w == "int") { saw_int = true; any = true; take(); continue; }
            if (w == "void") {
                if (any || named) break;
                take();
                named = CType::void_type();
                continue;
            }
            if (w == "struct" || w == "union" || w == "enum") {
                if (any || named) break;
                take();
                std::string tag = w;
                if (cur().kind == TokenKind::Identifier) take();
                if (peek_is("{")) throw DialectError(cur().loc, "inline " + tag + " definitions are not supported");
                named = tag == "enum" ? kInt : CType::void_type();
                continue;
            }
            if (!any && !named) {
                if (auto it = builtin_typedefs().find(w); it != builtin_typedefs().end()) {
                    named = it->second;
                    take();
                    continue;
                }
                if (auto it = user_typedefs_.find(w); it != user_typedefs_.end()) {
                    named = it->second;
                    take();
                    continue;
                }
            }
            break;
        }
        if (named) {
            if (any) throw ParseError(loc, "conflicting type specifiers");
            return *named;
        }
        if (!any) {
            if (at_end()) throw ParseError(loc, "unexpected end of input, expected a type");
            throw ParseError(loc, "unknown type name '" + cur().text + "'");
        }
        (void)saw_int;
        const bool is_unsigned = saw_unsigned && !saw_signed;
        int width = 32;
        if (saw_char) width = 8;
        else if (saw_short) width = 16;
        else if (longs > 0) width = 64;
        if (saw_char && !saw_signed && !saw_unsigned) return CType::signed_int(8);
        return is_unsigned ? CType::unsigned_int(width) : CType::signed_int(width);
    }

    CType pointer_suffix(CType base) {
        while (accept("*")) {
            base = base.address_of();
            while (cur().kind == TokenKind::Identifier && qualifiers().count(cur().text)) take();
        }
        return base;
    }

    /// Abstract declarator for casts and sizeof: type-specifiers followed by stars.
    CType type_name() {
        CType t = pointer_suffix(decl_specifiers());
        if (peek_is("(") && peek_is(1, "*")) throw DialectError(cur().loc, "function pointer type names are not supported");
        if (peek_is("[")) throw DialectError(cur().loc, "array type names are not supported");
        return t;
    }

    void typedef_decl() {
        take();  // typedef
        CType base = decl_specifiers();
        while (true) {
            CType t = pointer_suffix(base);
            if (peek_is("(")) throw DialectError(cur().loc, "function typedefs are not supported");
            const std::string name = expect_identifier("typedef name").text;
            if (peek_is("[")) throw DialectError(cur().loc, "array typedefs are not supported");
            user_typedefs_[name] = t;
            if (!accept(",")) break;
        }
        expect(";");
    }

    std::vector<Param> parameter_list(bool& variadic) {
        std::vector<Param> params;
        if (accept(")")) return params;
        if (peek_is("void") && peek_is(1, ")")) {
            take();
            take();
            return params;
        }
        while (true) {
            if (accept("...")) {
                variadic = true;
                break;
            }
            Param p;
            p.loc = cur().loc;
            p.type = pointer_suffix(decl_specifiers());
            if (peek_is("(")) throw DialectError(cur().loc, "function pointer parameters are not supported");
            if (cur().kind == TokenKind::Identifier) {
                p.loc = cur().loc;
                p.name = take().text;
            }
            while (accept("[")) {
                while (!peek_is("]") && !at_end()) take();
                expect("]");
                p.type = p.type.address_of();
            }
            if (p.type.is_void() && p.name.empty()) throw ParseError(p.loc, "'void' must be the only parameter");
            if (p.type.is_void() || p.type.is_code()) throw DialectError(p.loc, "parameter of type void or code");
            params.push_back(std::move(p));
            if (!accept(",")) break;
        }
        expect(")");
        return params;
    }

    // ---- statements ----------------------------------------------------
    Stmt compound() {
        Stmt s;
        s.kind = StmtKind::Compound;
        s.loc = cur().loc;
        expect("{");
        while (!peek_is("}")) {
            if (at_end()) throw ParseError(s.loc, "unterminated block");
            s.children.push_back(statement());
        }
        expect("}");
        return s;
    }

    Stmt declaration() {
        Stmt s;
        s.kind = StmtKind::Decl;
        s.loc = cur().loc;
        if (peek_is("typedef")) throw DialectError(s.loc, "local typedefs are not supported");
        CType base = decl_specifiers();
        while (true) {
            Declarator d;
            d.type = pointer_suffix(base);
            if (peek_is("(")) throw DialectError(cur().loc, "function pointer declarators are not supported");
            d.loc = cur().loc;
            d.name = expect_identifier("variable name").text;
            if (accept("[")) {
                if (cur().kind != TokenKind::Integer) {
                    if (peek_is("]")) throw DialectError(cur().loc, "array without a length");
                    throw DialectError(cur().loc, "array length must be an integer literal");
                }
                d.array_length = take().value;
                expect("]");
                if (peek_is("[")) throw DialectError(cur().loc, "multi-dimensional arrays are not supported");
                if (*d.array_length == 0) throw DialectError(d.loc, "zero-length array");
            }
            if (accept("=")) {
                if (peek_is("{")) throw DialectError(cur().loc, "aggregate initializers are not supported");
                d.init = assignment();
            }
            s.decls.push_back(std::move(d));
            if (!accept(",")) break;
        }
        expect(";");
        return s;
    }

    Stmt statement() {
        const SourceLoc loc = cur().loc;
        Stmt s;
        s.loc = loc;
        if (peek_is("{")) return compound();
        if (accept(";")) {
            s.kind = StmtKind::Empty;
            return s;
        }
        if (cur().kind == TokenKind::Identifier) {
            const std::string& w = cur().text;
            if (w == "if") {
                take();
                s.kind = StmtKind::If;
                expect("(");
                s.expr = expression();
                expect(")");
                s.children.push_back(statement());
                if (accept("else")) s.children.push_back(statement());
                return s;
            }
            if (w == "while") {
                take();
                s.kind = StmtKind::While;
                expect("(");
                s.expr = expression();
                expect(")");
                s.children.push_back(statement());
                return s;
            }
            if (w == "do") {
                take();
                s.kind = StmtKind::DoWhile;
                s.children.push_back(statement());
                expect("while");
                expect("(");
                s.expr = expression();
                expect(")");
                expect(";");
                return s;
            }
            if (w == "for") {
                take();
                s.kind = StmtKind::For;
                expect("(");
                Stmt init;
                init.loc = cur().loc;
                if (accept(";")) {
                    init.kind = StmtKind::Empty;
                } else if (type_starts()) {
                    init = declaration();
                } else {
                    init.kind = StmtKind::ExprStmt;
                    init.expr = expression();
                    expect(";");
                }
                s.children.push_back(std::move(init));
                if (!peek_is(";")) s.expr = expression();
                expect(";");
                if (!peek_is(")")) s.step = expression();
                expect(")");
                s.children.push_back(statement());
                return s;
            }
            if (w == "switch") {
                take();
                s.kind = StmtKind::Switch;
                expect("(");
                s.expr = expression();
                expect(")");
                s.children.push_back(statement());
                return s;
            }
            if (w == "case") {
                take();
                s.kind = StmtKind::Case;
                s.expr = conditional();
                expect(":");
                s.children.push_back(label_target());
                return s;
            }
            if (w == "default" && peek_is(1, ":")) {
                take();
                take();
                s.kind = StmtKind::Default;
                s.children.push_back(label_target());
                return s;
            }
            if (w == "goto") {
                take();
                s.kind = StmtKind::Goto;
                s.label = expect_identifier("label").text;
                expect(";");
                return s;
            }
            if (w == "return") {
                take();
                s.kind = StmtKind::Return;
                if (!peek_is(";")) s.expr = expression();
                expect(";");
                return s;
            }
            if (w == "break") {
                take();
                expect(";");
                s.kind = StmtKind::Break;
                return s;
            }
            if (w == "continue") {
                take();
                expect(";");
                s.kind = StmtKind::Continue;
                return s;
            }
            if (w == "else") throw ParseError(loc, "'else' without a previous 'if'");
            if (peek_is(1, ":") && !is_type_name(cur())) {
                s.kind = StmtKind::Label;
                s.label = take().text;
                take();
                s.children.push_back(label_target());
                return s;
            }
            if (type_starts()) return declaration();
        }
        s.kind = StmtKind::ExprStmt;
        s.expr = expression();
        expect(";");
        return s;
    }

    // A label directly before '}' labels an empty statement (accepted by GCC).
    Stmt label_target() {
        if (peek_is("}")) {
            Stmt e;
            e.kind = StmtKind::Empty;
            e.loc = cur().loc;
            return e;
        }
        return statement();
    }

    // ---- expressions ---------------------------------------------------
    static Expr make(ExprKind kind, SourceLoc loc) {
        Expr e;
        e.kind = kind;
        e.loc = loc;
        return e;
    }

    Expr expression() {
        Expr lhs = assignment();
        while (peek_is(",")) {
            const SourceLoc loc = take().loc;
            Expr e = make(ExprKind::Binary, loc);
            e.binary = BinaryOp::Comma;
            e.children.push_back(std::move(lhs));
            e.children.push_back(assignment());
            lhs = std::move(e);
        }
        return lhs;
    }

    Expr assignment() {
        Expr lhs = conditional();
        static const std::unordered_map<std::string, AssignOp> ops = {
            {"=", AssignOp::Assign}, {"+=", AssignOp::Add}, {"-=", AssignOp::Sub}, {"*=", AssignOp::Mul},
            {"/=", AssignOp::Div},   {"%=", AssignOp::Rem}, {"<<=", AssignOp::Shl}, {">>=", AssignOp::Shr},
            {"&=", AssignOp::And},   {"^=", AssignOp::Xor}, {"|=", AssignOp::Or},
        };
        if (cur().kind == TokenKind::Punct) {
            if (auto it = ops.find(cur().text); it != ops.end()) {
                const SourceLoc loc = take().loc;
                Expr e = make(ExprKind::Assign, loc);
                e.assign = it->second;
                e.children.push_back(std::move(lhs));
                e.children.push_back(assignment());
                return e;
            }
        }
        return lhs;
    }

    Expr conditional() {
        Expr cond = binary(0);
        if (peek_is("?")) {
            const SourceLoc loc = take().loc;
            Expr e = make(ExprKind::Ternary, loc);
            e.children.push_back(std::move(cond));
            e.children.push_back(expression());
            expect(":");
            e.children.push_back(conditional());
            return e;
        }
        return cond;
    }

    struct BinInfo {
        int prec;
        BinaryOp op;
    };

    [[nodiscard]] std::optional<BinInfo> binary_info() const {
        if (cur().kind != TokenKind::Punct) return std::nullopt;
        static const std::unordered_map<std::string, BinInfo> table = {
            {"||", {1, BinaryOp::LogicalOr}}, {"&&", {2, BinaryOp::LogicalAnd}}, {"|", {3, BinaryOp::BitOr}},
            {"^", {4, BinaryOp::BitXor}},     {"&", {5, BinaryOp::BitAnd}},      {"==", {6, BinaryOp::Eq}},
            {"!=", {6, BinaryOp::Ne}},        {"<", {7, BinaryOp::Lt}},          {">", {7, BinaryOp::Gt}},
            {"<=", {7, BinaryOp::Le}},        {">=", {7, BinaryOp::Ge}},         {"<<", {8, BinaryOp::Shl}},
            {">>", {8, BinaryOp::Shr}},       {"+", {9, BinaryOp::Add}},         {"-", {9, BinaryOp::Sub}},
            {"*", {10, BinaryOp::Mul}},       {"/", {10, BinaryOp::Div}},        {"%", {10, BinaryOp::Rem}},
        };
        if (auto it = table.find(cur().text); it != table.end()) return it->second;
        return std::nullopt;
    }

    Expr binary(int min_prec) {
        Expr lhs = unary();
        while (true) {
            const auto info = binary_info();
            if (!info || info->prec <= min_prec) break;
            const SourceLoc loc = take().loc;
            Expr rhs = binary(info->prec);
            Expr e = make(ExprKind::Binary, loc);
            e.binary = info->op;
            e.children.push_back(std::move(lhs));
            e.children.push_back(std::move(rhs));
            lhs = std::move(e);
        }
        return lhs;
    }

    Expr unary() {
        const SourceLoc loc = cur().loc;
        if (cur().kind == TokenKind::Punct) {
            static const std::unordered_map<std::string, UnaryOp> prefix = {
                {"-", UnaryOp::Neg},   {"+", UnaryOp::Plus},         {"~", UnaryOp::BitNot},
                {"!", UnaryOp::LogicalNot}, {"*", UnaryOp::Deref},   {"&", UnaryOp::AddressOf},
                {"++", UnaryOp::PreInc},    {"--", UnaryOp::PreDec},
            };
            if (auto it = prefix.find(cur().text); it != prefix.end()) {
                take();
                Expr e = make(ExprKind::Unary, loc);
                e.unary = it->second;
                e.children.push_back(unary());
                return e;
            }
            if (peek_is("(") && is_type_name(peek_tok(1))) {
                take();
                Expr e = make(ExprKind::Cast, loc);
                e.written_type = type_name();
                expect(")");
                e.children.push_back(unary());
                return e;
            }
        }
        if (peek_is("sizeof")) {
            take();
            if (peek_is("(") && is_type_name(peek_tok(1))) {
                take();
                Expr e = make(ExprKind::SizeofType, loc);
                e.written_type = type_name();
                expect(")");
                return e;
            }
            Expr e = make(ExprKind::SizeofExpr, loc);
            e.children.push_back(unary());
            return e;
        }
        return postfix(primary());
    }

    Expr postfix(Expr base) {
        while (true) {
            const SourceLoc loc = cur().loc;
            if (accept("[")) {
                Expr e = make(ExprKind::Subscript, loc);
                e.children.push_back(std::move(base));
                e.children.push_back(expression());
                expect("]");
                base = std::move(e);
            } else if (accept("(")) {
                std::vector<Expr> args;
                if (!peek_is(")")) {
                    while (true) {
                        args.push_back(assignment());
                        if (!accept(",")) break;
                    }
                }
                expect(")");
                base = make_call(std::move(base), std::move(args), loc);
            } else if (peek_is("++") || peek_is("--")) {
                const bool inc = take().text == "++";
                Expr e = make(ExprKind::Unary, loc);
                e.unary = inc ? UnaryOp::PostInc : UnaryOp::PostDec;
                e.children.push_back(std::move(base));
                base = std::move(e);
            } else if (peek_is(".") || peek_is("->")) {
                throw DialectError(loc, "member access is not supported");
            } else {
                return base;
            }
        }
    }

    static Expr make_call(Expr callee, std::vector<Expr> args, SourceLoc loc) {
        int a = 0;
        int b = 0;
        if (callee.kind == ExprKind::Ident && is_concat_name(callee.text, a, b)) {
            if (args.size() != 2) throw ParseError(callee.loc, callee.text + " expects two operands");
            if (a + b > 8) throw DialectError(callee.loc, callee.text + " produces more than 8 bytes");
            Expr e = make(ExprKind::Concat, callee.loc);
            e.text = callee.text;
            e.pseudo_in = a;
            e.pseudo_out = b;
            e.children = std::move(args);
            return e;
        }
        if (callee.kind == ExprKind::Ident && is_subpiece_name(callee.text, a, b)) {
            if (args.size() != 2) throw ParseError(callee.loc, callee.text + " expects two operands");
            if (b > a) throw DialectError(callee.loc, callee.text + " extracts more bytes than its input has");
            Expr e = make(ExprKind::SubPiece, callee.loc);
            e.text = callee.text;
            e.pseudo_in = a;
            e.pseudo_out = b;
            e.children = std::move(args);
            return e;
        }
        Expr e = make(ExprKind::Call, loc);
        if (callee.kind == ExprKind::Ident) e.text = callee.text;
        e.children.push_back(std::move(callee));
        for (Expr& arg : args) e.children.push_back(std::move(arg));
        return e;
    }

    Expr primary() {
        const Token& t = cur();
        const SourceLoc loc = t.loc;
        switch (t.kind) {
            case TokenKind::Integer: {
                Expr e = make(ExprKind::IntLiteral, loc);
                e.literal = t.value;
                e.hex = t.hex;
                e.suffix = t.suffix;
                take();
                return e;
            }
            case TokenKind::Char: {
                Expr e = make(ExprKind::IntLiteral, loc);
                e.literal = t.value;
                take();
                return e;
            }
            case TokenKind::String: {
                Expr e = make(ExprKind::StringLiteral, loc);
                while (cur().kind == TokenKind::String) e.text += take().text;
                return e;
            }
            case TokenKind::Identifier: {
                if (is_type_name(t)) throw ParseError(loc, "unexpected type name '" + t.text + "' in expression");
                static const std::set<std::string, std::less<>> reserved = {
                    "if", "else", "while", "do", "for", "switch", "case", "default", "goto", "return", "break", "continue",
                };
                if (reserved.count(t.text)) throw ParseError(loc, "unexpected keyword '" + t.text + "' in expression");
                Expr e = make(ExprKind::Ident, loc);
                e.text = t.text;
                take();
                return e;
            }
            case TokenKind::Punct:
                if (t.text == "(") {
                    take();
                    if (peek_is("{")) throw DialectError(loc, "statement expressions are not supported");
                    Expr e = expression();
                    expect(")");
                    return e;
                }
                throw ParseError(loc, "expected expression before '" + t.text + "'");
            case TokenKind::End:
                throw ParseError(loc, "unexpected end of input in expression");
        }
        throw ParseError(loc, "expected expression");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::unordered_map<std::string, CType> user_typedefs_;
};

}  // namespace

bool is_concat_name(std::string_view name, int& hi_bytes, int& lo_bytes) {
    return parse_two_digits(name, "CONCAT", hi_bytes, lo_bytes);
}

bool is_subpiece_name(std::string_view name, int& in_bytes, int& out_bytes) {
    return parse_two_digits(name, "SUB", in_bytes, out_bytes);
}

FunctionAst parse_function_syntax(std::string_view source) {
    if (source.find_first_not_of(" \t\r\n") == std::string_view::npos) {
        throw ParseError(SourceLoc{1, 1}, "empty source");
    }
    Parser p(tokenize(source));
    return p.translation_unit();
}

FunctionAst parse_function(std::string_view source) {
    FunctionAst fn = parse_function_syntax(source);
    analyze(fn);
    return fn;
}

}  // namespace dscore::frontend
