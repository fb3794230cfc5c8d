#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ceg/sexpr.hpp"

namespace ceg {

/// A ground term: an operator applied to subterms. Nullary terms are bare
/// atoms in the s-expression form, e.g. `(max x y)`, `true`.
struct Term {
    std::string op;
    std::vector<Term> children;

    Term() = default;
    explicit Term(std::string o, std::vector<Term> cs = {})
        : op(std::move(o)), children(std::move(cs)) {}

    friend bool operator==(const Term& a, const Term& b) {
        return a.op == b.op && a.children == b.children;
    }
};

namespace detail {

inline Term term_from_sexpr(const SExpr& e) {
    if (e.is_atom())
        return Term(e.atom);
    if (e.items.empty() || !e.items.front().is_atom())
        throw ParseError("term list must start with an operator atom");
    Term t(e.items.front().atom);
    for (std::size_t i = 1; i < e.items.size(); ++i)
        t.children.push_back(term_from_sexpr(e.items[i]));
    return t;
}

} // namespace detail

inline Term parse_term(std::string_view s) {
    return detail::term_from_sexpr(parse_sexpr(s));
}

/// Parse a whole file worth of terms (whitespace separated, `;` comments).
inline std::vector<Term> parse_terms(std::string_view s) {
    std::vector<Term> out;
    for (const SExpr& e : parse_sexprs(s))
        out.push_back(detail::term_from_sexpr(e));
    return out;
}

inline std::string to_string(const Term& t) {
    if (t.children.empty())
        return t.op;
    std::string out = "(" + t.op;
    for (const Term& c : t.children) {
        out += ' ';
        out += to_string(c);
    }
    out += ')';
    return out;
}

} // namespace ceg
