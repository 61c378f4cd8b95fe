#ifndef FGCALC_RESIDUE_HPP
#define FGCALC_RESIDUE_HPP

#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "fgcalc/ring.hpp"
#include "fgcalc/series.hpp"
#include "fgcalc/weierstrass.hpp"

namespace fgcalc {

// Per-component degree report for a meromorphic function whose degree is not
// constant: the base splits along its idempotents and each factor gets its
// own degree.
struct MeroDegreeSplit {
    struct Component {
        RingElem idempotent;  // in the original ring
        RingPtr component;
        long degree;
    };
    std::vector<Component> components;
};

using MeroDegree = std::variant<long, MeroDegreeSplit>;

namespace detail {

inline std::optional<long> scan_constant_degree(const LaurentSeries& f, bool* saw_obstruction) {
    for (long k = f.lower(); k < f.order(); ++k) {
        RingElem a = f.coefficient(k);
        if (is_unit(a)) return k;
        if (!is_nilpotent(a)) {
            if (saw_obstruction) *saw_obstruction = true;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace detail

// The unique k with a_j nilpotent below k and a_k a unit, when it exists.
// Over a plain Z/n base a mixed element splits the scheme instead, giving a
// per-component degree.
inline MeroDegree mero_degree(const LaurentSeries& f) {
    if (f.is_zero()) raise(ErrorCode::NotInvertible, "mero_degree of the zero function");
    bool obstructed = false;
    if (auto k = detail::scan_constant_degree(f, &obstructed)) return *k;
    if (!obstructed)
        raise(ErrorCode::NotInvertible, "all coefficients nilpotent below the truncation order");
    const RingPtr& R = f.ring();
    if (R->base() != BaseRing::IntegersMod || !R->generators().empty())
        raise(ErrorCode::NotConstantDegree,
              "degree is not constant and the base does not support splitting");
    MeroDegreeSplit split;
    for (const auto& [idem, comp] : split_ring(R)) {
        LaurentSeries fc = LaurentSeries::zero(comp, f.var(), f.lower(), f.order());
        for (const auto& [k, c] : f.terms()) fc.set_term(k, change_base(c, comp));
        if (fc.is_zero())
            raise(ErrorCode::NotInvertible, "function vanishes on a component of the base");
        bool comp_obstructed = false;
        auto k = detail::scan_constant_degree(fc, &comp_obstructed);
        if (!k)
            raise(comp_obstructed ? ErrorCode::NotConstantDegree : ErrorCode::NotInvertible,
                  "component degree is not defined");
        split.components.push_back({idem, comp, *k});
    }
    return split;
}

inline long mero_constant_degree(const LaurentSeries& f) {
    MeroDegree d = mero_degree(f);
    if (auto* k = std::get_if<long>(&d)) return *k;
    raise(ErrorCode::NotConstantDegree, "function does not have constant degree");
}

// f = x^k u(x) g(x) with u a unit power series and g = 1 + (nilpotent
// finite tail in negative powers); unique for constant-degree f.
struct MeroFactorization {
    long degree;
    TruncSeries unit_part;
    LaurentSeries tail;
};

inline MeroFactorization mero_factor(const LaurentSeries& f) {
    long k = mero_constant_degree(f);
    long shift = f.lower() < 0 ? -f.lower() : 0;
    // h = x^shift f is an honest Weierstrass series of degree shift + k.
    long horder = f.order() + shift;
    if (horder <= 0 || shift + k < 0)
        raise(ErrorCode::OrderTooLow, "mero_factor: window does not reach the unit coefficient");
    TruncSeries h = TruncSeries::zero(f.ring(), {f.var()}, static_cast<unsigned>(horder));
    for (const auto& [j, c] : f.terms()) h.set_term(ExpVec{static_cast<unsigned>(j + shift)}, c);
    WeierstrassFactorization wf = weierstrass_factor(h);
    long d = static_cast<long>(wf.h.size()) - 1;  // = shift + k
    LaurentSeries tail = LaurentSeries::zero(f.ring(), f.var(), -d, kLaurentExact);
    for (long i = 0; i <= d; ++i) tail.set_term(-i, wf.h[static_cast<std::size_t>(i)]);
    // u is exact to h's order = f.order() + shift, which is exactly what the
    // round-trip x^k u g needs to reproduce f at its own order.
    return {k, wf.u, tail};
}

// a_{-1}: the algebraic sum of the residues of f(x) dx at all poles near 0.
inline RingElem residue(const LaurentSeries& f) {
    if (f.order() <= -1)
        raise(ErrorCode::OrderTooLow, "residue: the x^-1 coefficient is beyond the stored window");
    return f.coefficient(-1);
}

// Inverse assembled from the factorization: x^-k u^-1 g^-1, the tail inverted
// by a finite geometric sum.
inline LaurentSeries laurent_invert(const LaurentSeries& f) {
    MeroFactorization mf = mero_factor(f);
    TruncSeries uinv = series_invert(mf.unit_part);
    LaurentSeries ul = LaurentSeries::from_series(uinv);
    LaurentSeries one = LaurentSeries::monomial(f.ring(), f.var(), 0, RingElem::one(f.ring()),
                                                kLaurentExact);
    LaurentSeries q = one - mf.tail;  // nilpotent finite tail
    LaurentSeries ginv = one;
    LaurentSeries p = q;
    for (unsigned j = 0; !p.is_zero(); ++j) {
        if (j > kNilpotencyCap) raise(ErrorCode::InternalError, "tail inverse did not terminate");
        ginv = ginv + p;
        p = p * q;
    }
    LaurentSeries xk = LaurentSeries::monomial(f.ring(), f.var(), -mf.degree,
                                               RingElem::one(f.ring()), kLaurentExact);
    return xk * ul * ginv;
}

// Integer powers, negative ones through laurent_invert.
inline LaurentSeries laurent_pow(const LaurentSeries& f, long n) {
    if (n >= 0) return f.pow(static_cast<unsigned>(n));
    return laurent_invert(f).pow(static_cast<unsigned>(-n));
}

// f(g(x)) for meromorphic f and a Weierstrass series g of positive degree;
// negative powers of g live in the Laurent ring.  The result order accounts
// for f's unknown tail through the nilpotency of g(0).
inline LaurentSeries laurent_compose(const LaurentSeries& f, const TruncSeries& g) {
    require_same_ring(f.ring(), g.ring(), "laurent_compose");
    if (g.vars().size() != 1)
        raise(ErrorCode::VariableMismatch, "laurent_compose: g must be single-variable");
    WeierstrassReport rep = weierstrass_degree(g);
    if (rep.degree == 0)
        raise(ErrorCode::NotWeierstrass, "laurent_compose needs deg g >= 1");
    unsigned budget = detail::nilpotent_budget(g.constant_term());
    LaurentSeries gl = LaurentSeries::from_series(g);
    LaurentSeries ginv = laurent_invert(gl);
    LaurentSeries acc = LaurentSeries::zero(f.ring(), g.vars()[0], 0, kLaurentExact);
    for (const auto& [k, c] : f.terms()) {
        LaurentSeries p = k >= 0 ? gl.pow(static_cast<unsigned>(k))
                                 : ginv.pow(static_cast<unsigned>(-k));
        acc = acc + p.scaled(c);
    }
    long tail_guard = f.order() - static_cast<long>(budget);
    return acc.truncated(std::min(acc.order(), tail_guard));
}

}  // namespace fgcalc

#endif
