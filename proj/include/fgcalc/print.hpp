#ifndef FGCALC_PRINT_HPP
#define FGCALC_PRINT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fgcalc/ring.hpp"
#include "fgcalc/series.hpp"

namespace fgcalc {

// Canonical text forms.  Guarantee: parse(print(v)) == v for every value the
// printers emit (the parser round-trip tests pin this down).
//
// Conventions: ring-element terms are ordered by total degree descending,
// ties broken lexicographically descending on the exponent vector
// (polynomial convention); series terms by total degree ascending with the
// same tie-break, so x sorts before y.

namespace detail {

inline bool grevlex_before(const ExpVec& a, const ExpVec& b) {
    std::uint64_t da = 0, db = 0;
    for (auto v : a) da += v;
    for (auto v : b) db += v;
    if (da != db) return da > db;
    return a > b;
}

inline std::string print_rational(const mpq_class& q) {
    std::string s = q.get_num().get_str();
    if (q.get_den() != 1) s += "/" + q.get_den().get_str();
    return s;
}

// One monomial as "coeff*gen1^e1*...", with the sign stripped into `neg`.
inline std::string print_monomial(const RingDesc& ring, const ExpVec& e, const mpq_class& c,
                                  bool& neg) {
    mpq_class a = c;
    neg = a < 0;
    if (neg) a = -a;
    std::string body;
    const auto& gens = ring.generators();
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!body.empty()) body += "*";
        body += gens[i].name;
        if (e[i] > 1) body += "^" + std::to_string(e[i]);
    }
    if (body.empty()) return print_rational(a);
    if (a == 1) return body;
    return print_rational(a) + "*" + body;
}

}  // namespace detail

inline std::string print_ring_elem(const RingElem& a) {
    if (a.is_zero()) return "0";
    std::vector<std::pair<ExpVec, mpq_class>> terms(a.terms().begin(), a.terms().end());
    std::sort(terms.begin(), terms.end(),
              [](const auto& x, const auto& y) { return detail::grevlex_before(x.first, y.first); });
    std::string out;
    for (const auto& [e, c] : terms) {
        bool neg = false;
        std::string mono = detail::print_monomial(*a.ring(), e, c, neg);
        if (out.empty())
            out = neg ? "-" + mono : mono;
        else
            out += (neg ? " - " : " + ") + mono;
    }
    return out;
}

inline std::string print_ring_desc(const RingDesc& ring) {
    std::string out;
    switch (ring.base()) {
        case BaseRing::Integers: out = "Z"; break;
        case BaseRing::Rationals: out = "Q"; break;
        case BaseRing::IntegersMod: out = "Z/" + ring.modulus().get_str(); break;
    }
    if (!ring.generators().empty()) {
        out += "[";
        bool first = true;
        for (const auto& g : ring.generators()) {
            if (!first) out += ",";
            first = false;
            out += g.name + ":" + std::to_string(g.grade);
            if (g.power_relation) out += ";" + g.name + "^" + std::to_string(*g.power_relation);
        }
        out += "]";
    }
    return out;
}

namespace detail {

inline void append_signed(std::string& out, bool neg, const std::string& body) {
    if (out.empty())
        out = neg ? "-" + body : body;
    else
        out += (neg ? " - " : " + ") + body;
}

// Appends coeff * varpart to a sum under construction.  A coefficient with a
// single ring monomial is fused into the summand; a multi-term coefficient is
// parenthesized, except that with no variable part its monomials are spliced
// directly into the sum.
inline void append_coeff_term(std::string& out, const RingElem& c, const std::string& varpart) {
    if (varpart.empty()) {
        std::vector<std::pair<ExpVec, mpq_class>> terms(c.terms().begin(), c.terms().end());
        std::sort(terms.begin(), terms.end(),
                  [](const auto& x, const auto& y) { return grevlex_before(x.first, y.first); });
        for (const auto& [ge, gc] : terms) {
            bool neg = false;
            std::string mono = print_monomial(*c.ring(), ge, gc, neg);
            append_signed(out, neg, mono);
        }
        return;
    }
    if (c.terms().size() == 1) {
        const auto& [ge, gc] = *c.terms().begin();
        bool neg = false;
        std::string mono = print_monomial(*c.ring(), ge, gc, neg);
        append_signed(out, neg, mono == "1" ? varpart : mono + "*" + varpart);
        return;
    }
    append_signed(out, false, "(" + print_ring_elem(c) + ")*" + varpart);
}

inline std::string var_power(const std::string& var, long e) {
    if (e == 0) return "";
    std::string s = var;
    if (e != 1) s += "^" + std::to_string(e);
    return s;
}

}  // namespace detail

inline std::string print_series(const TruncSeries& s) {
    if (s.terms().empty()) return "0";
    std::vector<std::pair<ExpVec, RingElem>> terms(s.terms().begin(), s.terms().end());
    // Ascending total degree; ties lexicographically descending so x sorts
    // ahead of y within a degree.
    std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
        std::uint64_t dx = 0, dy = 0;
        for (auto v : x.first) dx += v;
        for (auto v : y.first) dy += v;
        if (dx != dy) return dx < dy;
        return x.first > y.first;
    });
    std::string out;
    for (const auto& [e, c] : terms) {
        std::string varpart;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!varpart.empty()) varpart += "*";
            varpart += detail::var_power(s.vars()[i], e[i]);
        }
        detail::append_coeff_term(out, c, varpart);
    }
    return out;
}

inline std::string print_laurent(const LaurentSeries& s) {
    if (s.terms().empty()) return "0";
    std::string out;
    for (const auto& [e, c] : s.terms())  // map iterates exponents ascending
        detail::append_coeff_term(out, c, detail::var_power(s.var(), e));
    return out;
}

// Monic-first polynomial printing, highest power first: coeffs[0] t^n + ...
inline std::string print_poly(const std::vector<RingElem>& coeffs, const std::string& var) {
    if (coeffs.empty()) return "0";
    std::size_t n = coeffs.size() - 1;
    std::string out;
    for (std::size_t i = 0; i <= n; ++i) {
        if (coeffs[i].is_zero()) continue;
        detail::append_coeff_term(out, coeffs[i], detail::var_power(var, static_cast<long>(n - i)));
    }
    return out.empty() ? "0" : out;
}

}  // namespace fgcalc

#endif
