#pragma once

#include "dscore/symbolic/expr.hpp"

#include <set>
#include <string>
#include <vector>

namespace dscore::equivalence {

/// Accumulates an SMT-LIB2 script over QF_ABV. Nodes are emitted once per
/// writer as define-fun in dependency order; names carry a per-model prefix so
/// that nodes of independent contexts never clash. Width-1 values stand for
/// booleans.
class SmtWriter {
public:
    explicit SmtWriter(int arity);

    /// Emits definitions for `roots` and everything below them, returning the
    /// names bound to the roots.
    std::vector<std::string> define(const std::vector<symbolic::SymValue>& roots, const std::string& prefix);

    /// Emits `(define-fun name () sort body)`.
    void define_raw(const std::string& name, const std::string& sort, const std::string& body);

    void assert_true(const std::string& bool_term);
    /// Restricts every argument to a sign-extended 8-bit value.
    void restrict_to_bytes();

    /// Full script ending in check-sat and get-value over the arguments.
    [[nodiscard]] std::string finish() const;

    static std::string sort_of(int width);
    static std::string literal(std::uint64_t value, int width);

private:
    std::string node_term(symbolic::SymValue v, const std::string& prefix) const;
    std::string name_of(symbolic::SymValue v, const std::string& prefix) const;

    int arity_;
    std::string body_;
    std::set<std::pair<std::string, std::size_t>> emitted_;
};

}  // namespace dscore::equivalence
