#include "dscore/frontend/ast_json.hpp"
#include "dscore/frontend/metrics.hpp"
#include "dscore/frontend/parser.hpp"
#include "dscore/frontend/printer.hpp"
#include "fixtures.hpp"

#include <doctest.h>

using namespace dscore::frontend;

namespace {

int count_kind(const Stmt& s, StmtKind k) {
    int n = s.kind == k ? 1 : 0;
    for (const Stmt& c : s.children) n += count_kind(c, k);
    return n;
}

bool has_call(const Expr& e, const std::string& name) {
    if (e.kind == ExprKind::Call && e.text == name) return true;
    for (const Expr& c : e.children) {
        if (has_call(c, name)) return true;
    }
    return false;
}

bool stmt_has_call(const Stmt& s, const std::string& name) {
    if (s.expr && has_call(*s.expr, name)) return true;
    for (const Declarator& d : s.decls) {
        if (d.init && has_call(*d.init, name)) return true;
    }
    for (const Stmt& c : s.children) {
        if (stmt_has_call(c, name)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("minimal function parses to a single return of 0") {
    FunctionAst fn = parse_function("int f(void){ return 0; }");
    CHECK(fn.name == "f");
    CHECK(fn.params.empty());
    REQUIRE(fn.body.children.size() == 1);
    const Stmt& r = fn.body.children[0];
    CHECK(r.kind == StmtKind::Return);
    REQUIRE(r.expr);
    CHECK(r.expr->kind == ExprKind::IntLiteral);
    CHECK(r.expr->literal == 0);
    CHECK(cyclomatic_complexity(fn) == 1);
}

TEST_CASE("uuid_copy original: one do-while, two 64-bit signed params, CC 2") {
    const std::string src = fixtures::read("uuid_copy_original.c");
    FunctionAst fn = parse_function(src);
    REQUIRE(fn.params.size() == 2);
    for (const Param& p : fn.params) CHECK(p.type == kLong);
    CHECK(count_kind(fn.body, StmtKind::DoWhile) == 1);
    CHECK(fn.return_type.is_void());
    CHECK(compute_metrics(fn, src).cyclomatic_complexity == 2);
}

TEST_CASE("fdisk original contains both partition calls") {
    FunctionAst fn = parse_function(fixtures::read("fdisk_delete_all_partitions_original.c"));
    CHECK(stmt_has_call(fn.body, "fdisk_is_partition_used"));
    CHECK(stmt_has_call(fn.body, "fdisk_delete_partition"));
    NameMultiset calls = collect_external_calls(fn);
    CHECK(calls == NameMultiset{{"fdisk_delete_partition", 1}, {"fdisk_is_partition_used", 1}});
}

TEST_CASE("external call names of both echo variants") {
    for (const char* name : {"echo_main_a.c", "echo_main_b.c"}) {
        const std::string src = fixtures::read(name);
        FunctionAst fn = parse_function(src);
        SourceMetrics m = compute_metrics(fn, src);
        CHECK(m.external_call_names == NameMultiset{{"fgets", 1}, {"printf", 2}});
    }
}

TEST_CASE("no calls yields an empty multiset") {
    CHECK(collect_external_calls(parse_function("long f(long x){ return x + 1; }")).empty());
}

TEST_CASE("parse errors carry a location") {
    try {
        parse_function("int f(void){ return 0 }");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.loc().line == 1);
        CHECK(e.loc().column > 1);
    }
    CHECK_THROWS_AS(parse_function("int f(void){ return 1 @ 2; }"), ParseError);
    CHECK_THROWS_AS(parse_function("int f(void){ /* open"), ParseError);
    CHECK_THROWS_AS(parse_function("int f(void){ return \"abc; }"), ParseError);
}

TEST_CASE("dialect errors") {
    CHECK_THROWS_AS(parse_function("int f(void){ return 1.5; }"), DialectError);
    CHECK_THROWS_AS(parse_function("double f(void){ return 0; }"), DialectError);
    CHECK_THROWS_AS(parse_function("int f(long p){ return p->x; }"), DialectError);
    CHECK_THROWS_AS(parse_function("void f(long p){ p[1] = 0; }"), DialectError);
}

TEST_CASE("goto must target a defined label") {
    CHECK_NOTHROW(parse_function("int f(int a){ if (a) goto out; a = 2; out: return a; }"));
    CHECK_THROWS_AS(parse_function("int f(int a){ goto nowhere; return a; }"), ParseError);
}

TEST_CASE("pseudo operations become dedicated nodes") {
    FunctionAst fn = parse_function("uint f(ushort a, ushort b){ return CONCAT22(a, b) + SUB84(0x1122334455667788, 4); }");
    const Expr& sum = *fn.body.children[0].expr;
    REQUIRE(sum.kind == ExprKind::Binary);
    CHECK(sum.children[0].kind == ExprKind::Concat);
    CHECK(sum.children[0].type.value_width() == 32);
    CHECK(sum.children[1].kind == ExprKind::SubPiece);
    CHECK(sum.children[1].literal == 4);
}

TEST_CASE("unresolved identifiers are recorded") {
    FunctionAst fn = parse_function("long f(void){ return DAT_00104010 + DAT_00104010; }");
    CHECK(fn.unresolved_symbols.at("DAT_00104010") == 2);
}

TEST_CASE("cyclomatic complexity counts decision points") {
    FunctionAst fn = parse_function(
        "int f(int a, int b){ int r = 0; if (a && b) r = 1; while (a) { a--; } for (;b;b--) r++;"
        " do { r = r ? r : 1; } while (0); switch (a) { case 1: r = 2; break; case 2: default: r = 3; }"
        " return r || a; }");
    // if, &&, while, for, do, ?:, case 1, case 2, ||
    CHECK(cyclomatic_complexity(fn) == 10);
}

TEST_CASE("adding an if raises CC by one") {
    for (const char* name : fixtures::kCaseStudies) {
        const std::string src = fixtures::read(std::string(name) + "_original.c");
        FunctionAst fn = parse_function(src);
        const int before = cyclomatic_complexity(fn);
        Stmt extra = parse_function("void g(int q){ if (q) q = 1; }").body.children[0];
        fn.body.children.insert(fn.body.children.begin(), extra);
        CHECK(cyclomatic_complexity(fn) == before + 1);
    }
}

TEST_CASE("external calls ignore whitespace and comments") {
    const std::string a = fixtures::read("fdisk_delete_all_partitions_original.c");
    std::string b;
    for (char c : a) {
        b += c;
        if (c == ';') b += " /* note */\n\n   ";
        if (c == ',') b += "  // x\n";
    }
    CHECK(collect_external_calls(parse_function(a)) == collect_external_calls(parse_function(b)));
}

TEST_CASE("line counts") {
    const std::string src = "int f(void)\n{\n\n   \n  return 0;\n}\n";
    CHECK(count_lines(src, true) == 4);
    CHECK(count_lines(src, false) == 6);
}

TEST_CASE("pretty print round trip") {
    std::vector<std::string> sources = {
        "echo_main_a.c", "echo_main_b.c",
    };
    for (const char* name : fixtures::kCaseStudies) {
        for (const char* tag : {"_original.c", "_finetuned.c"}) sources.push_back(std::string(name) + tag);
    }
    sources.push_back("fdisk_delete_all_partitions_baseline.c");
    sources.push_back("strv_length_baseline.c");
    for (const std::string& name : sources) {
        CAPTURE(name);
        FunctionAst a = parse_function(fixtures::read(name));
        const std::string printed = print_function(a);
        FunctionAst b = parse_function(printed);
        CHECK(same_structure(a, b));
        CHECK(print_function(b) == printed);
    }
    const char* tricky =
        "typedef unsigned int u32;\nlong g();\nlong counter;\n"
        "u32 f(u32 *p, int n){ int i, *q = 0; char buf[8]; u32 acc = 0x10u;"
        " for (int k = 0, *z = 0; k < n; k++) { acc += p[k] << 2; acc ^= -(int)k; }"
        " switch (n) { case -1: acc = ~acc; break; default: acc = (u32)sizeof(buf) + sizeof(long); }"
        " q = &i; *q = n > 0 ? n : -n; buf[0] = 'a'; acc = acc + (u32)g(\"x\\n\", buf) + counter++;"
        " if (acc) goto done; acc--; done: return acc % 7 + (acc, 3); }";
    FunctionAst a = parse_function(tricky);
    FunctionAst b = parse_function(print_function(a));
    CHECK(same_structure(a, b));
}

TEST_CASE("ast json uses stable field names") {
    auto j = to_json(parse_function("int f(int a){ return a + 0x10; }"));
    CHECK(j["kind"] == "function");
    const auto& ret = j["children"][0]["children"][0];
    CHECK(ret["kind"] == "return");
    const auto& add = ret["children"][0];
    CHECK(add["kind"] == "binary");
    CHECK(add["width"] == 32);
    CHECK(add["children"][1]["literal"] == 16);
}
