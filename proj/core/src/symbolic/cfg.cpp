#include "cfg.hpp"

#include <map>
#include <string>

namespace dscore::symbolic::detail {

using frontend::Stmt;
using frontend::StmtKind;

namespace {

class Lowering {
public:
    explicit Lowering(Cfg& cfg) : cfg_(cfg) {}

    void run(const Stmt& body) {
        cur_ = fresh();
        cfg_.entry = cur_;
        stmt(body);
        block().term.kind = TermKind::End;
    }

private:
    struct Switch {
        std::vector<std::pair<std::uint64_t, int>>* cases;
        int* default_target;
        int width;
    };

    int fresh() {
        cfg_.blocks.emplace_back();
        cfg_.blocks.back().term.kind = TermKind::End;
        return static_cast<int>(cfg_.blocks.size()) - 1;
    }

    Block& block() { return cfg_.blocks[static_cast<std::size_t>(cur_)]; }

    // Ends the current block with a jump to `target` and continues in `next`.
    void jump_to(int target) {
        block().term = Terminator{};
        block().term.kind = TermKind::Jump;
        block().term.target = target;
    }

    void fall_into(int next) {
        jump_to(next);
        cur_ = next;
    }

    int label_block(const std::string& name) {
        if (auto it = labels_.find(name); it != labels_.end()) return it->second;
        const int b = fresh();
        labels_[name] = b;
        return b;
    }

    void branch(const frontend::Expr& cond, int t, int f) {
        block().term = Terminator{};
        block().term.kind = TermKind::Branch;
        block().term.expr = &cond;
        block().term.target = t;
        block().term.target_false = f;
    }

    void stmt(const Stmt& s) {
        switch (s.kind) {
            case StmtKind::Compound:
                for (const Stmt& c : s.children) stmt(c);
                break;
            case StmtKind::Decl:
                for (const frontend::Declarator& d : s.decls) block().steps.push_back({&d, nullptr});
                break;
            case StmtKind::ExprStmt:
                block().steps.push_back({nullptr, &*s.expr});
                break;
            case StmtKind::Empty:
                break;
            case StmtKind::If: {
                const int then_b = fresh();
                const int join = fresh();
                const int else_b = s.children.size() > 1 ? fresh() : join;
                branch(*s.expr, then_b, else_b);
                cur_ = then_b;
                stmt(s.children[0]);
                jump_to(join);
                if (s.children.size() > 1) {
                    cur_ = else_b;
                    stmt(s.children[1]);
                    jump_to(join);
                }
                cur_ = join;
                break;
            }
            case StmtKind::While: {
                const int head = fresh();
                const int body = fresh();
                const int exit = fresh();
                fall_into(head);
                branch(*s.expr, body, exit);
                loop_body(s.children[0], body, exit, head);
                jump_to(head);
                cur_ = exit;
                break;
            }
            case StmtKind::DoWhile: {
                const int body = fresh();
                const int cond = fresh();
                const int exit = fresh();
                fall_into(body);
                loop_body(s.children[0], body, exit, cond);
                fall_into(cond);
                branch(*s.expr, body, exit);
                cur_ = exit;
                break;
            }
            case StmtKind::For: {
                stmt(s.children[0]);
                const int head = fresh();
                const int body = fresh();
                const int step = fresh();
                const int exit = fresh();
                fall_into(head);
                if (s.expr) {
                    branch(*s.expr, body, exit);
                } else {
                    jump_to(body);
                }
                loop_body(s.children[1], body, exit, step);
                fall_into(step);
                if (s.step) block().steps.push_back({nullptr, &*s.step});
                jump_to(head);
                cur_ = exit;
                break;
            }
            case StmtKind::Switch: {
                const int dispatch = cur_;
                const int exit = fresh();
                Terminator term;
                term.kind = TermKind::Switch;
                term.expr = &*s.expr;
                term.target = exit;
                switches_.push_back({&term.cases, &term.target, frontend::promote(s.expr->type).value_width()});
                breaks_.push_back(exit);
                cur_ = fresh();  // unreachable until the first label
                stmt(s.children[0]);
                jump_to(exit);
                breaks_.pop_back();
                switches_.pop_back();
                cfg_.blocks[static_cast<std::size_t>(dispatch)].term = std::move(term);
                cur_ = exit;
                break;
            }
            case StmtKind::Case: {
                const int b = fresh();
                fall_into(b);
                const Switch& sw = switches_.back();
                const frontend::CType& ct = s.expr->type;
                std::uint64_t v = s.case_value;
                const int cw = ct.value_width();
                if (ct.is_signed() && cw < 64 && ((v >> (cw - 1)) & 1)) v |= ~((1ULL << cw) - 1);
                if (sw.width < 64) v &= (1ULL << sw.width) - 1;
                sw.cases->emplace_back(v, b);
                stmt(s.children[0]);
                break;
            }
            case StmtKind::Default: {
                const int b = fresh();
                fall_into(b);
                *switches_.back().default_target = b;
                stmt(s.children[0]);
                break;
            }
            case StmtKind::Label: {
                const int b = label_block(s.label);
                fall_into(b);
                stmt(s.children[0]);
                break;
            }
            case StmtKind::Goto:
                jump_to(label_block(s.label));
                cur_ = fresh();
                break;
            case StmtKind::Return:
                block().term = Terminator{};
                block().term.kind = TermKind::Return;
                block().term.expr = s.expr ? &*s.expr : nullptr;
                cur_ = fresh();
                break;
            case StmtKind::Break:
                jump_to(breaks_.back());
                cur_ = fresh();
                break;
            case StmtKind::Continue:
                jump_to(continues_.back());
                cur_ = fresh();
                break;
        }
    }

    void loop_body(const Stmt& body, int body_block, int exit, int cont) {
        cur_ = body_block;
        breaks_.push_back(exit);
        continues_.push_back(cont);
        stmt(body);
        continues_.pop_back();
        breaks_.pop_back();
    }

    Cfg& cfg_;
    int cur_ = 0;
    std::map<std::string, int> labels_;
    std::vector<int> breaks_;
    std::vector<int> continues_;
    std::vector<Switch> switches_;
};

}  // namespace

Cfg lower(const frontend::FunctionAst& fn) {
    Cfg cfg;
    Lowering(cfg).run(fn.body);
    return cfg;
}

}  // namespace dscore::symbolic::detail
