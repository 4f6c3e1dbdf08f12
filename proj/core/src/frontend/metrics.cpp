#include "dscore/frontend/metrics.hpp"

#include "dscore/frontend/lexer.hpp"

#include <cctype>

namespace dscore::frontend {

namespace {

template <typename ExprFn>
void walk_exprs(const Expr& e, ExprFn& fn) {
    fn(e);
    for (const Expr& c : e.children) walk_exprs(c, fn);
}

template <typename StmtFn, typename ExprFn>
void walk(const Stmt& s, StmtFn& on_stmt, ExprFn& on_expr) {
    on_stmt(s);
    if (s.expr) walk_exprs(*s.expr, on_expr);
    if (s.step) walk_exprs(*s.step, on_expr);
    for (const Declarator& d : s.decls) {
        if (d.init) walk_exprs(*d.init, on_expr);
    }
    for (const Stmt& c : s.children) walk(c, on_stmt, on_expr);
}

}  // namespace

int count_lines(std::string_view src, bool non_blank_only) {
    int lines = 0;
    bool content = false;
    bool any = false;
    for (char c : src) {
        any = true;
        if (c == '\n') {
            if (!non_blank_only || content) ++lines;
            content = false;
            any = false;
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            content = true;
        }
    }
    if (any && (!non_blank_only || content)) ++lines;
    return lines;
}

int cyclomatic_complexity(const FunctionAst& ast) {
    int points = 0;
    auto on_stmt = [&](const Stmt& s) {
        switch (s.kind) {
            case StmtKind::If:
            case StmtKind::While:
            case StmtKind::DoWhile:
            case StmtKind::For:
            case StmtKind::Case:
                ++points;
                break;
            default:
                break;
        }
    };
    auto on_expr = [&](const Expr& e) {
        if (e.kind == ExprKind::Ternary) ++points;
        if (e.kind == ExprKind::Binary && (e.binary == BinaryOp::LogicalAnd || e.binary == BinaryOp::LogicalOr)) ++points;
    };
    walk(ast.body, on_stmt, on_expr);
    return points + 1;
}

NameMultiset collect_external_calls(const FunctionAst& ast) {
    NameMultiset names;
    auto on_stmt = [](const Stmt&) {};
    auto on_expr = [&](const Expr& e) {
        if (e.kind != ExprKind::Call) return;
        const Expr& callee = e.children[0];
        if (callee.kind != ExprKind::Ident || callee.text == ast.name) return;
        if (callee.ref == RefKind::Function || callee.ref == RefKind::Unresolved) ++names[callee.text];
    };
    walk(ast.body, on_stmt, on_expr);
    return names;
}

SourceMetrics compute_metrics(const FunctionAst& ast, std::string_view src) {
    SourceMetrics m;
    m.effective_lines = count_lines(src, true);
    m.total_lines = count_lines(src, false);
    m.cyclomatic_complexity = cyclomatic_complexity(ast);
    m.token_count = static_cast<int>(tokenize(src).size()) - 1;
    m.external_call_names = collect_external_calls(ast);
    return m;
}

}  // namespace dscore::frontend
