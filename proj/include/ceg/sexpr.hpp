#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ceg {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parsed s-expression: an atom, or a list of s-expressions.
/// `;` starts a comment running to end of line.
struct SExpr {
    std::string atom;          // nonempty iff this is an atom
    std::vector<SExpr> items;  // children iff this is a list

    bool is_atom() const { return !atom.empty(); }
};

namespace detail {

inline void skip_ws(std::string_view s, std::size_t& i) {
    while (i < s.size()) {
        if (s[i] == ';') {
            while (i < s.size() && s[i] != '\n')
                ++i;
        } else if (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r') {
            ++i;
        } else {
            break;
        }
    }
}

inline SExpr parse_sexpr_at(std::string_view s, std::size_t& i) {
    skip_ws(s, i);
    if (i >= s.size())
        throw ParseError("unexpected end of input");
    if (s[i] == ')')
        throw ParseError("unexpected ')' at offset " + std::to_string(i));
    if (s[i] == '(') {
        ++i;
        SExpr list;
        while (true) {
            skip_ws(s, i);
            if (i >= s.size())
                throw ParseError("missing ')'");
            if (s[i] == ')') {
                ++i;
                return list;
            }
            list.items.push_back(parse_sexpr_at(s, i));
        }
    }
    const std::size_t start = i;
    while (i < s.size() && s[i] != '(' && s[i] != ')' && s[i] != ';' && s[i] != ' ' &&
           s[i] != '\t' && s[i] != '\n' && s[i] != '\r')
        ++i;
    SExpr e;
    e.atom.assign(s.substr(start, i - start));
    return e;
}

} // namespace detail

/// Parse exactly one s-expression; trailing garbage is an error.
inline SExpr parse_sexpr(std::string_view s) {
    std::size_t i = 0;
    SExpr e = detail::parse_sexpr_at(s, i);
    detail::skip_ws(s, i);
    if (i != s.size())
        throw ParseError("trailing input after s-expression at offset " + std::to_string(i));
    return e;
}

/// Parse all whitespace-separated top-level s-expressions in `s`.
inline std::vector<SExpr> parse_sexprs(std::string_view s) {
    std::vector<SExpr> out;
    std::size_t i = 0;
    while (true) {
        detail::skip_ws(s, i);
        if (i >= s.size())
            return out;
        out.push_back(detail::parse_sexpr_at(s, i));
    }
}

inline std::string to_string(const SExpr& e) {
    if (e.is_atom())
        return e.atom;
    std::string out = "(";
    for (std::size_t k = 0; k < e.items.size(); ++k) {
        if (k)
            out += ' ';
        out += to_string(e.items[k]);
    }
    out += ')';
    return out;
}

} // namespace ceg
