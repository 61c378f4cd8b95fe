#ifndef FGCALC_HOPF_IO_HPP
#define FGCALC_HOPF_IO_HPP

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fgcalc/hopf.hpp"
#include "fgcalc/parse.hpp"
#include "fgcalc/print.hpp"

namespace fgcalc {

// Text format for finite Hopf-algebra data (see docs/hopf-format.md):
//
//   rank = m
//   ring = <ring expression>
//   mult[i][j]  = (k, coeff), (k2, coeff2), ...
//   comult[i]   = (j, k, coeff), ...
//   unit        = (i, coeff), ...
//   counit      = (i, coeff), ...
//   antipode[i] = (j, coeff), ...        (optional)
//
// '#' starts a comment; unspecified entries are zero; coefficients are
// expressions over the declared ring.

namespace detail {

struct HopfLine {
    std::string key;
    std::vector<long> indices;
    std::string rhs;
    unsigned lineno;
};

inline std::vector<HopfLine> split_hopf_lines(const std::string& text) {
    std::vector<HopfLine> out;
    std::istringstream in(text);
    std::string raw;
    unsigned lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        std::size_t eq = line.find('=');
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (blank) continue;
        if (eq == std::string::npos)
            throw ParseError(lineno, 1, {"'key = value' line"}, "'" + raw + "'");
        HopfLine hl;
        hl.lineno = lineno;
        hl.rhs = line.substr(eq + 1);
        std::string lhs = line.substr(0, eq);
        TokenStream ts(tokenize(lhs));
        hl.key = ts.expect_ident();
        while (ts.accept_punct('[')) {
            hl.indices.push_back(static_cast<long>(ts.expect_nat()));
            ts.expect_punct(']');
        }
        ts.expect_end();
        out.push_back(std::move(hl));
    }
    return out;
}

// (i, j, ..., expr) tuples separated by commas.
inline std::vector<std::pair<std::vector<unsigned long>, RingElem>> parse_tuples(
    const std::string& rhs, unsigned nat_count, const RingPtr& ring) {
    std::vector<std::pair<std::vector<unsigned long>, RingElem>> out;
    TokenStream ts(tokenize(rhs));
    while (!ts.at_end()) {
        ts.expect_punct('(');
        std::vector<unsigned long> idx;
        for (unsigned i = 0; i < nat_count; ++i) {
            idx.push_back(ts.expect_nat());
            ts.expect_punct(',');
        }
        ElemAlgebra alg{ring};
        RingElem c = parse_expr(ts, alg);
        ts.expect_punct(')');
        out.emplace_back(std::move(idx), std::move(c));
        if (!ts.at_end()) ts.expect_punct(',');
    }
    return out;
}

}  // namespace detail

inline FiniteHopf parse_hopf(const std::string& text) {
    auto lines = detail::split_hopf_lines(text);
    std::optional<unsigned> rank;
    RingPtr ring;
    for (const auto& l : lines) {
        if (l.key == "rank") {
            TokenStream ts(tokenize(l.rhs));
            rank = static_cast<unsigned>(ts.expect_nat());
            ts.expect_end();
        } else if (l.key == "ring") {
            TokenStream ts(tokenize(l.rhs));
            ring = parse_ring_tokens(ts);
            ts.expect_end();
        }
    }
    if (!rank || !ring) throw ParseError(1, 1, {"rank and ring declarations"}, "<file>");
    FiniteHopf H(ring, *rank);
    bool has_antipode = false;
    std::vector<RingElem> chi(static_cast<std::size_t>(*rank) * *rank, RingElem::zero(ring));

    auto check_index = [&](unsigned long i, const detail::HopfLine& l) {
        if (i >= *rank) throw ParseError(l.lineno, 1, {"index below rank"}, std::to_string(i));
    };

    for (const auto& l : lines) {
        if (l.key == "rank" || l.key == "ring") continue;
        if (l.key == "mult") {
            if (l.indices.size() != 2) throw ParseError(l.lineno, 1, {"mult[i][j]"}, l.key);
            check_index(l.indices[0], l);
            check_index(l.indices[1], l);
            for (auto& [idx, c] : detail::parse_tuples(l.rhs, 1, ring)) {
                check_index(idx[0], l);
                H.mult(static_cast<unsigned>(l.indices[0]), static_cast<unsigned>(l.indices[1]),
                       static_cast<unsigned>(idx[0])) = c;
            }
        } else if (l.key == "comult") {
            if (l.indices.size() != 1) throw ParseError(l.lineno, 1, {"comult[i]"}, l.key);
            check_index(l.indices[0], l);
            for (auto& [idx, c] : detail::parse_tuples(l.rhs, 2, ring)) {
                check_index(idx[0], l);
                check_index(idx[1], l);
                H.comult(static_cast<unsigned>(l.indices[0]), static_cast<unsigned>(idx[0]),
                         static_cast<unsigned>(idx[1])) = c;
            }
        } else if (l.key == "unit" || l.key == "counit") {
            if (!l.indices.empty()) throw ParseError(l.lineno, 1, {l.key + " without indices"}, l.key);
            for (auto& [idx, c] : detail::parse_tuples(l.rhs, 1, ring)) {
                check_index(idx[0], l);
                (l.key == "unit" ? H.unit() : H.counit())[idx[0]] = c;
            }
        } else if (l.key == "antipode") {
            if (l.indices.size() != 1) throw ParseError(l.lineno, 1, {"antipode[i]"}, l.key);
            check_index(l.indices[0], l);
            has_antipode = true;
            for (auto& [idx, c] : detail::parse_tuples(l.rhs, 1, ring)) {
                check_index(idx[0], l);
                chi[l.indices[0] * *rank + idx[0]] = c;
            }
        } else {
            throw ParseError(l.lineno, 1, {"rank", "ring", "mult", "comult", "unit", "counit", "antipode"},
                             "'" + l.key + "'");
        }
    }
    if (has_antipode) H.antipode() = std::move(chi);
    return H;
}

inline std::string print_hopf(const FiniteHopf& H) {
    std::string out;
    unsigned m = H.rank();
    out += "rank = " + std::to_string(m) + "\n";
    out += "ring = " + print_ring_desc(*H.ring()) + "\n";
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) {
            std::string rhs;
            for (unsigned k = 0; k < m; ++k) {
                const RingElem& c = H.mult(i, j, k);
                if (c.is_zero()) continue;
                if (!rhs.empty()) rhs += ", ";
                rhs += "(" + std::to_string(k) + ", " + print_ring_elem(c) + ")";
            }
            if (!rhs.empty())
                out += "mult[" + std::to_string(i) + "][" + std::to_string(j) + "] = " + rhs + "\n";
        }
    for (unsigned i = 0; i < m; ++i) {
        std::string rhs;
        for (unsigned j = 0; j < m; ++j)
            for (unsigned k = 0; k < m; ++k) {
                const RingElem& c = H.comult(i, j, k);
                if (c.is_zero()) continue;
                if (!rhs.empty()) rhs += ", ";
                rhs += "(" + std::to_string(j) + ", " + std::to_string(k) + ", " +
                       print_ring_elem(c) + ")";
            }
        if (!rhs.empty()) out += "comult[" + std::to_string(i) + "] = " + rhs + "\n";
    }
    auto vec_line = [&](const char* key, const std::vector<RingElem>& v) {
        std::string rhs;
        for (unsigned i = 0; i < m; ++i) {
            if (v[i].is_zero()) continue;
            if (!rhs.empty()) rhs += ", ";
            rhs += "(" + std::to_string(i) + ", " + print_ring_elem(v[i]) + ")";
        }
        if (!rhs.empty()) out += std::string(key) + " = " + rhs + "\n";
    };
    vec_line("unit", H.unit());
    vec_line("counit", H.counit());
    if (H.antipode()) {
        for (unsigned i = 0; i < m; ++i) {
            std::string rhs;
            for (unsigned j = 0; j < m; ++j) {
                RingElem c = H.antipode_entry(i, j);
                if (c.is_zero()) continue;
                if (!rhs.empty()) rhs += ", ";
                rhs += "(" + std::to_string(j) + ", " + print_ring_elem(c) + ")";
            }
            if (!rhs.empty()) out += "antipode[" + std::to_string(i) + "] = " + rhs + "\n";
        }
    }
    return out;
}

}  // namespace fgcalc

#endif
