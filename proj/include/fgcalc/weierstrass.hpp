#ifndef FGCALC_WEIERSTRASS_HPP
#define FGCALC_WEIERSTRASS_HPP

#include <utility>
#include <vector>

#include "fgcalc/ring.hpp"
#include "fgcalc/series.hpp"

namespace fgcalc {

// Outcome of the degree scan: a_k nilpotent for k < degree, a_degree a unit.
struct WeierstrassReport {
    unsigned degree = 0;
    std::vector<unsigned> nilpotent_witnesses;  // indices k < degree with a_k nonzero
};

inline WeierstrassReport weierstrass_degree(const TruncSeries& g) {
    if (g.vars().size() != 1)
        raise(ErrorCode::VariableMismatch, "weierstrass_degree: single-variable series required");
    WeierstrassReport rep;
    for (unsigned k = 0; k < g.order(); ++k) {
        RingElem a = g.coefficient_single(k);
        if (is_unit(a)) {
            rep.degree = k;
            return rep;
        }
        if (!is_nilpotent(a))
            raise(ErrorCode::NotWeierstrass,
                  "coefficient of degree " + std::to_string(k) + " is neither a unit nor nilpotent");
        if (!a.is_zero()) rep.nilpotent_witnesses.push_back(k);
    }
    raise(ErrorCode::NotWeierstrass, "no unit coefficient below the truncation order");
}

// g = h * u with h a monic degree-n polynomial with nilpotent lower
// coefficients and u a unit series; exact at g's truncation order and unique
// there.  h is stored leading coefficient first: h[0] = 1, h[i] multiplies
// x^{n-i}.
struct WeierstrassFactorization {
    std::vector<RingElem> h;
    TruncSeries u;
};

inline constexpr unsigned kWeierstrassIterationCap = 1000;

namespace detail {

inline TruncSeries poly_as_series(const std::vector<RingElem>& h, const RingPtr& ring,
                                  const std::vector<std::string>& vars, unsigned order) {
    TruncSeries s = TruncSeries::zero(ring, vars, order);
    std::size_t n = h.size() - 1;
    for (std::size_t i = 0; i < h.size(); ++i)
        s.set_term(ExpVec{static_cast<unsigned>(n - i)}, h[i]);
    return s;
}

// Coefficients of x^{k+shift} for k >= 0, i.e. the series divided by x^shift
// keeping only nonnegative exponents.
inline TruncSeries shift_down(const TruncSeries& s, unsigned shift) {
    TruncSeries r = TruncSeries::zero(s.ring(), s.vars(), s.order());
    for (const auto& [e, c] : s.terms())
        if (e[0] >= shift) r.set_term(ExpVec{e[0] - shift}, c);
    return r;
}

}  // namespace detail

// Exact Laurent inverse of a monic polynomial with nilpotent lower
// coefficients: h = x^n (1 + w) with w supported on negative exponents and
// nilpotent, so (1 + w)^-1 is a finite geometric sum.
inline LaurentSeries monic_poly_inverse(const std::vector<RingElem>& h, const RingPtr& ring,
                                        const std::string& var) {
    long n = static_cast<long>(h.size()) - 1;
    LaurentSeries w = LaurentSeries::zero(ring, var, -n, kLaurentExact);
    for (long i = 1; i <= n; ++i) w.set_term(-i, h[static_cast<std::size_t>(i)]);
    LaurentSeries sum = LaurentSeries::monomial(ring, var, 0, RingElem::one(ring), kLaurentExact);
    LaurentSeries p = -w;
    for (unsigned j = 0; !p.is_zero(); ++j) {
        if (j > kNilpotencyCap)
            raise(ErrorCode::InternalError, "monic_poly_inverse: tail is not nilpotent");
        sum = sum + p;
        p = p * (-w);
    }
    return LaurentSeries::monomial(ring, var, -n, RingElem::one(ring), kLaurentExact) * sum;
}

// Successive-substitution preparation: start from h = x^n, u = x^{-n} g_high
// and converge h and u together; each pass divides the residual g - h*u by
// the nilpotent ideal of the lower coefficients, so the loop ends after at
// most its nilpotency order.  The cap guards against nontermination bugs.
inline WeierstrassFactorization weierstrass_factor(const TruncSeries& g,
                                                   unsigned iteration_cap = kWeierstrassIterationCap) {
    WeierstrassReport rep = weierstrass_degree(g);
    unsigned n = rep.degree;
    unsigned N = g.order();
    if (n >= N) raise(ErrorCode::OrderTooLow, "weierstrass_factor: degree reaches truncation order");
    const RingPtr& R = g.ring();

    TruncSeries high = TruncSeries::zero(R, g.vars(), N);
    for (const auto& [e, c] : g.terms())
        if (e[0] >= n) high.set_term(e, c);
    TruncSeries u = detail::shift_down(high, n);

    std::vector<RingElem> h(n + 1, RingElem::zero(R));
    h[0] = RingElem::one(R);

    for (unsigned pass = 0;; ++pass) {
        if (pass > iteration_cap)
            raise(ErrorCode::InternalError, "weierstrass_factor: iteration cap exceeded");
        TruncSeries residual = g - detail::poly_as_series(h, R, g.vars(), N) * u;
        if (residual.is_zero()) break;
        TruncSeries q = residual * series_invert(u);
        TruncSeries q_high = TruncSeries::zero(R, g.vars(), N);
        for (const auto& [e, c] : q.terms()) {
            if (e[0] < n)
                h[n - e[0]] += c;
            else
                q_high.set_term(e, c);
        }
        u += u * detail::shift_down(q_high, n);
    }

    for (unsigned i = 1; i <= n; ++i)
        if (!is_nilpotent(h[i]))
            raise(ErrorCode::InternalError, "weierstrass_factor: lower coefficient not nilpotent");

    // The iterated u is only canonical below order N - n; replace it by the
    // exact cofactor of the stored data, u = g * h^-1 in the Laurent ring.
    LaurentSeries gl = LaurentSeries::zero(R, g.vars()[0], 0, kLaurentExact);
    for (const auto& [e, c] : g.terms()) gl.set_term(static_cast<long>(e[0]), c);
    LaurentSeries ul = gl * monic_poly_inverse(h, R, g.vars()[0]);
    TruncSeries ucanon = TruncSeries::zero(R, g.vars(), N);
    for (const auto& [k, c] : ul.terms()) {
        if (k < 0)
            raise(ErrorCode::InternalError, "weierstrass_factor: cofactor has a pole");
        if (k < static_cast<long>(N)) ucanon.set_term(ExpVec{static_cast<unsigned>(k)}, c);
    }
    if (!is_unit(ucanon.constant_term()))
        raise(ErrorCode::InternalError, "weierstrass_factor: cofactor is not a unit series");
    return {std::move(h), std::move(ucanon)};
}

// Canonical representative of f in R[[x]]/(g) on the rank-n basis
// {1, x, ..., x^{n-1}}: factor g, then reduce modulo the monic part h
// (f mod g = f mod h since the unit cofactor does not change the ideal).
// Returned leading coefficient first, length n (degree n-1 down to 0).
inline std::vector<RingElem> weierstrass_reduce(const TruncSeries& f, const TruncSeries& g) {
    require_same_ring(f.ring(), g.ring(), "weierstrass_reduce");
    WeierstrassFactorization wf = weierstrass_factor(g);
    unsigned n = static_cast<unsigned>(wf.h.size() - 1);
    const RingPtr& R = f.ring();
    if (n == 0) return {};

    unsigned N = f.order();
    std::vector<RingElem> c(std::max(N, n), RingElem::zero(R));
    for (const auto& [e, t] : f.terms()) c[e[0]] = t;
    for (std::size_t m = c.size(); m-- > n;) {
        if (c[m].is_zero()) continue;
        RingElem lead = c[m];
        c[m] = RingElem::zero(R);
        for (unsigned i = 1; i <= n; ++i) c[m - i] -= lead * wf.h[i];
    }
    std::vector<RingElem> out(n, RingElem::zero(R));
    for (unsigned i = 0; i < n; ++i) out[i] = c[n - 1 - i];
    return out;
}

}  // namespace fgcalc

#endif
