#ifndef FGCALC_DIVISOR_HPP
#define FGCALC_DIVISOR_HPP

#include <utility>
#include <vector>

#include "fgcalc/fgl.hpp"
#include "fgcalc/ring.hpp"
#include "fgcalc/series.hpp"
#include "fgcalc/weierstrass.hpp"

namespace fgcalc {

// An effective divisor on the formal curve in a chosen coordinate: the monic
// polynomial f_D(t) = t^n + a_1 t^{n-1} + ... + a_n with every a_i nilpotent.
class Divisor {
public:
    static Divisor from_coefficients(RingPtr ring, std::vector<RingElem> coeffs) {
        if (coeffs.empty() || coeffs.front() != RingElem::one(ring))
            raise(ErrorCode::InternalError, "divisor polynomial must be monic");
        for (std::size_t i = 1; i < coeffs.size(); ++i) {
            require_same_ring(ring, coeffs[i].ring(), "divisor coefficient");
            if (!is_nilpotent(coeffs[i]))
                raise(ErrorCode::NotNilpotentRoot, "divisor coefficient is not nilpotent");
        }
        return Divisor(std::move(ring), std::move(coeffs));
    }

    static Divisor unit(RingPtr ring) {  // degree 0, f = 1
        std::vector<RingElem> c{RingElem::one(ring)};
        return Divisor(std::move(ring), std::move(c));
    }

    static Divisor origin(RingPtr ring, unsigned multiplicity = 1) {  // f = t^k
        std::vector<RingElem> c(multiplicity + 1, RingElem::zero(ring));
        c[0] = RingElem::one(ring);
        return Divisor(std::move(ring), std::move(c));
    }

    const RingPtr& ring() const { return ring_; }
    unsigned degree() const { return static_cast<unsigned>(coeffs_.size() - 1); }
    const std::vector<RingElem>& coefficients() const { return coeffs_; }

    friend bool operator==(const Divisor& a, const Divisor& b) {
        return same_ring(a.ring_, b.ring_) && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }

private:
    Divisor(RingPtr ring, std::vector<RingElem> coeffs)
        : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {}

    RingPtr ring_;
    std::vector<RingElem> coeffs_;
};

// f_D(t) = prod (t - c_i); the elementary-symmetric-function expansion.
inline Divisor divisor_from_points(const RingPtr& ring, const std::vector<RingElem>& roots) {
    for (const auto& r : roots) {
        require_same_ring(ring, r.ring(), "divisor_from_points");
        if (!is_nilpotent(r)) raise(ErrorCode::NotNilpotentRoot, "divisor root is not nilpotent");
    }
    std::vector<RingElem> coeffs{RingElem::one(ring)};
    for (const auto& r : roots) {
        std::vector<RingElem> next(coeffs.size() + 1, RingElem::zero(ring));
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i] += coeffs[i];
            next[i + 1] -= coeffs[i] * r;
        }
        coeffs = std::move(next);
    }
    return Divisor::from_coefficients(ring, std::move(coeffs));
}

// f_{D+E} = f_D f_E.
inline Divisor divisor_sum(const Divisor& D, const Divisor& E) {
    require_same_ring(D.ring(), E.ring(), "divisor_sum");
    const auto& a = D.coefficients();
    const auto& b = E.coefficients();
    std::vector<RingElem> c(a.size() + b.size() - 1, RingElem::zero(D.ring()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return Divisor::from_coefficients(D.ring(), std::move(c));
}

inline std::vector<RingElem> chern_coefficients(const Divisor& D) {
    return {D.coefficients().begin() + 1, D.coefficients().end()};
}

namespace detail {

// The free module R[t]/f(t) with its nilpotent generator class; powers of t
// reduced against the monic polynomial.
struct QuotientLine {
    explicit QuotientLine(const Divisor& D) : ring(D.ring()), n(D.degree()) {
        const auto& f = D.coefficients();
        // t^n = -(a_1 t^{n-1} + ... + a_n)
        reduction.assign(n, RingElem::zero(ring));
        for (unsigned i = 1; i <= n; ++i) reduction[n - i] = -f[i];
    }

    // coordinates of t^p on the basis 1, t, ..., t^{n-1}
    const std::vector<RingElem>& power(unsigned p) {
        while (powers.size() <= p) {
            unsigned q = static_cast<unsigned>(powers.size());
            if (q < n) {
                std::vector<RingElem> v(n, RingElem::zero(ring));
                v[q] = RingElem::one(ring);
                powers.push_back(std::move(v));
            } else {
                const std::vector<RingElem>& prev = powers[q - 1];
                std::vector<RingElem> v(n, RingElem::zero(ring));
                for (unsigned i = 0; i + 1 < n; ++i) v[i + 1] = prev[i];
                for (unsigned i = 0; i < n; ++i) v[i] += prev[n - 1] * reduction[i];
                powers.push_back(std::move(v));
            }
        }
        return powers[p];
    }

    RingPtr ring;
    unsigned n;
    std::vector<RingElem> reduction;
    std::vector<std::vector<RingElem>> powers;
};

// Elements of R[alpha]/f_D tensor R[beta]/f_E on the basis alpha^i beta^j.
struct TensorQuotient {
    TensorQuotient(const Divisor& D, const Divisor& E)
        : ring(D.ring()), lineA(D), lineB(E), n(D.degree()), m(E.degree()) {}

    using Elem = std::vector<RingElem>;  // size n*m, index i*m + j

    Elem zero() const { return Elem(static_cast<std::size_t>(n) * m, RingElem::zero(ring)); }

    Elem alpha() {
        Elem e = zero();
        const auto& p = lineA.power(1);
        for (unsigned u = 0; u < n; ++u) e[u * m + 0] = p[u];
        return e;
    }

    Elem beta() {
        Elem e = zero();
        const auto& p = lineB.power(1);
        for (unsigned v0 = 0; v0 < m; ++v0) e[v0] = p[v0];
        return e;
    }

    Elem scalar(const RingElem& c) const {
        Elem e = zero();
        if (!e.empty()) e[0] = c;
        return e;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r = a;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
        return r;
    }

    Elem mul(const Elem& a, const Elem& b) {
        // convolve exponents, then fold alpha^{i} beta^{j} back to the basis
        std::vector<RingElem> conv(static_cast<std::size_t>(2 * n) * (2 * m),
                                   RingElem::zero(ring));
        auto at = [&](unsigned i, unsigned j) -> RingElem& { return conv[i * (2 * m) + j]; };
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < m; ++j) {
                const RingElem& ca = a[i * m + j];
                if (ca.is_zero()) continue;
                for (unsigned k = 0; k < n; ++k)
                    for (unsigned l = 0; l < m; ++l) {
                        const RingElem& cb = b[k * m + l];
                        if (cb.is_zero()) continue;
                        at(i + k, j + l) += ca * cb;
                    }
            }
        Elem r = zero();
        for (unsigned i = 0; i < 2 * n; ++i)
            for (unsigned j = 0; j < 2 * m; ++j) {
                RingElem c = at(i, j);
                if (c.is_zero()) continue;
                const auto& pa = lineA.power(i);
                const auto& pb = lineB.power(j);
                for (unsigned u = 0; u < n; ++u) {
                    if (pa[u].is_zero()) continue;
                    for (unsigned v0 = 0; v0 < m; ++v0) {
                        if (pb[v0].is_zero()) continue;
                        r[u * m + v0] += c * pa[u] * pb[v0];
                    }
                }
            }
        return r;
    }

    bool is_zero(const Elem& a) const {
        for (const auto& c : a)
            if (!c.is_zero()) return false;
        return true;
    }

    RingPtr ring;
    QuotientLine lineA, lineB;
    unsigned n, m;
};

}  // namespace detail

// Translation product: the degree-nm divisor of all F-sums of the points of
// D and E, computed without splitting either divisor as the characteristic
// polynomial of multiplication by z = F(alpha, beta) on the rank-nm module
// R[alpha]/f_D tensor R[beta]/f_E.
inline Divisor divisor_star(const FGL& F, const Divisor& D, const Divisor& E) {
    require_same_ring(F.ring(), D.ring(), "divisor_star");
    require_same_ring(F.ring(), E.ring(), "divisor_star");
    unsigned n = D.degree(), m = E.degree();
    if (n == 0 || m == 0) return Divisor::unit(D.ring());

    detail::TensorQuotient A(D, E);
    auto al = A.alpha();
    auto be = A.beta();

    // nilpotency indices of the generator classes; the series order must
    // dominate their combined budget for the evaluation to be exact.
    auto nil_index = [&](const detail::TensorQuotient::Elem& e) {
        auto p = e;
        for (unsigned s = 1; s <= kNilpotencyCap; ++s) {
            if (A.is_zero(p)) return s;
            p = A.mul(p, e);
        }
        raise(ErrorCode::InternalError, "tensor generator is not nilpotent");
    };
    unsigned budget = (nil_index(al) - 1) + (nil_index(be) - 1);
    if (F.order() <= budget)
        raise(ErrorCode::OrderTooLow, "divisor_star: series order does not dominate nilpotency");

    // z = F(alpha, beta), evaluated with memoized powers.
    std::vector<detail::TensorQuotient::Elem> pa{A.scalar(RingElem::one(A.ring))};
    std::vector<detail::TensorQuotient::Elem> pb{A.scalar(RingElem::one(A.ring))};
    auto powa = [&](unsigned k) {
        while (pa.size() <= k) pa.push_back(A.mul(pa.back(), al));
        return pa[k];
    };
    auto powb = [&](unsigned k) {
        while (pb.size() <= k) pb.push_back(A.mul(pb.back(), be));
        return pb[k];
    };
    auto z = A.zero();
    for (const auto& [e, c] : F.series().terms()) {
        auto t = A.mul(powa(e[0]), powb(e[1]));
        for (auto& entry : t) entry *= c;
        z = A.add(z, t);
    }

    // matrix of multiplication by z in the monomial basis
    std::size_t dim = static_cast<std::size_t>(n) * m;
    SquareMatrix M(A.ring, dim);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < m; ++j) {
            auto basis = A.zero();
            basis[i * m + j] = RingElem::one(A.ring);
            auto img = A.mul(z, basis);
            for (std::size_t row = 0; row < dim; ++row) M.set(row, i * m + j, img[row]);
        }
    return Divisor::from_coefficients(A.ring, charpoly(M));
}

// Iterated group-law sum of a list of nilpotent points.
inline RingElem fgl_point_sum(const FGL& F, const std::vector<RingElem>& points) {
    RingElem acc = RingElem::zero(F.ring());
    for (const auto& p : points) acc = series_eval(F.series(), {acc, p});
    return acc;
}

// lambda^k of a split divisor: product over k-subsets of (t - F-sum of the
// subset).  Only offered in point-list form.
inline Divisor divisor_lambda(const FGL& F, const std::vector<RingElem>& roots, unsigned k) {
    if (k > roots.size())
        raise(ErrorCode::OrderTooLow, "divisor_lambda: k exceeds the number of points");
    for (const auto& r : roots)
        if (!is_nilpotent(r)) raise(ErrorCode::NotNilpotentRoot, "divisor_lambda: non-nilpotent root");
    if (k == 0) return Divisor::unit(F.ring());
    std::vector<RingElem> sums;
    std::vector<unsigned> idx(k);
    for (unsigned i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        std::vector<RingElem> subset;
        for (unsigned i : idx) subset.push_back(roots[i]);
        sums.push_back(fgl_point_sum(F, subset));
        long pos = static_cast<long>(k) - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] ==
                               roots.size() - k + static_cast<unsigned>(pos))
            --pos;
        if (pos < 0) break;
        idx[static_cast<std::size_t>(pos)] += 1;
        for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return divisor_from_points(F.ring(), sums);
}

// The divisor of a Weierstrass series: the monic polynomial part of its
// Weierstrass factorization.
inline Divisor divisor_of_series(const TruncSeries& g) {
    WeierstrassFactorization wf = weierstrass_factor(g);
    return Divisor::from_coefficients(g.ring(), std::move(wf.h));
}

// The formal difference D - k [0], canonical form with no common t-factor.
class MeroDivisor {
public:
    MeroDivisor(Divisor positive, unsigned shift)
        : positive_(std::move(positive)), shift_(shift) {
        canonicalize();
    }

    const Divisor& positive_part() const { return positive_; }
    unsigned shift() const { return shift_; }
    long degree() const { return static_cast<long>(positive_.degree()) - static_cast<long>(shift_); }

    friend MeroDivisor operator+(const MeroDivisor& a, const MeroDivisor& b) {
        return MeroDivisor(divisor_sum(a.positive_, b.positive_), a.shift_ + b.shift_);
    }

    // Negation is representable only for multiples of the origin.
    MeroDivisor negated() const {
        for (std::size_t i = 1; i < positive_.coefficients().size(); ++i)
            if (!positive_.coefficients()[i].is_zero())
                raise(ErrorCode::NotNegatable,
                      "only multiples of [0] can be negated in the D - k[0] representation");
        long d = degree();
        if (d >= 0) return MeroDivisor(Divisor::unit(positive_.ring()), static_cast<unsigned>(d));
        return MeroDivisor(Divisor::origin(positive_.ring(), static_cast<unsigned>(-d)), 0);
    }

    friend bool operator==(const MeroDivisor& a, const MeroDivisor& b) {
        return a.shift_ == b.shift_ && a.positive_ == b.positive_;
    }

private:
    void canonicalize() {
        // strip common [0]-factors greedily: f divisible by t iff a_n = 0
        while (shift_ > 0 && positive_.degree() > 0 && positive_.coefficients().back().is_zero()) {
            std::vector<RingElem> c = positive_.coefficients();
            c.pop_back();
            positive_ = Divisor::from_coefficients(positive_.ring(), std::move(c));
            --shift_;
        }
    }

    Divisor positive_;
    unsigned shift_;
};

}  // namespace fgcalc

#endif
