#ifndef FGCALC_HOPF_HPP
#define FGCALC_HOPF_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fgcalc/numeric.hpp"
#include "fgcalc/ring.hpp"

namespace fgcalc {

// Rank-m free Hopf-algebra data as structure constants over a RingDesc.
//   mult[i][j][k]   : coefficient of e_k in e_i e_j
//   unit[i]         : coordinates of the unit element
//   comult[i][j][k] : coefficient of e_j (x) e_k in psi(e_i)
//   counit[i]       : counit values on the basis
//   antipode[i][j]  : coefficient of e_j in chi(e_i), optional
class FiniteHopf {
public:
    FiniteHopf(RingPtr ring, unsigned rank)
        : ring_(std::move(ring)),
          rank_(rank),
          mult_(cube(rank), RingElem::zero(ring_)),
          unit_(rank, RingElem::zero(ring_)),
          comult_(cube(rank), RingElem::zero(ring_)),
          counit_(rank, RingElem::zero(ring_)) {}

    const RingPtr& ring() const { return ring_; }
    unsigned rank() const { return rank_; }

    RingElem& mult(unsigned i, unsigned j, unsigned k) { return mult_[(i * rank_ + j) * rank_ + k]; }
    const RingElem& mult(unsigned i, unsigned j, unsigned k) const {
        return mult_[(i * rank_ + j) * rank_ + k];
    }
    RingElem& comult(unsigned i, unsigned j, unsigned k) {
        return comult_[(i * rank_ + j) * rank_ + k];
    }
    const RingElem& comult(unsigned i, unsigned j, unsigned k) const {
        return comult_[(i * rank_ + j) * rank_ + k];
    }
    std::vector<RingElem>& unit() { return unit_; }
    const std::vector<RingElem>& unit() const { return unit_; }
    std::vector<RingElem>& counit() { return counit_; }
    const std::vector<RingElem>& counit() const { return counit_; }
    std::optional<std::vector<RingElem>>& antipode() { return antipode_; }
    const std::optional<std::vector<RingElem>>& antipode() const { return antipode_; }

    RingElem antipode_entry(unsigned i, unsigned j) const { return (*antipode_)[i * rank_ + j]; }

    // product of basis vector e_i with an arbitrary coordinate vector
    std::vector<RingElem> basis_mul(unsigned i, const std::vector<RingElem>& w) const {
        std::vector<RingElem> out(rank_, RingElem::zero(ring_));
        for (unsigned l = 0; l < rank_; ++l) {
            if (w[l].is_zero()) continue;
            for (unsigned k = 0; k < rank_; ++k) out[k] += w[l] * mult(i, l, k);
        }
        return out;
    }

    friend bool operator==(const FiniteHopf& a, const FiniteHopf& b) {
        return same_ring(a.ring_, b.ring_) && a.rank_ == b.rank_ && a.mult_ == b.mult_ &&
               a.unit_ == b.unit_ && a.comult_ == b.comult_ && a.counit_ == b.counit_ &&
               a.antipode_ == b.antipode_;
    }

private:
    static std::size_t cube(unsigned r) {
        return static_cast<std::size_t>(r) * r * r;
    }

    RingPtr ring_;
    unsigned rank_;
    std::vector<RingElem> mult_;
    std::vector<RingElem> unit_;
    std::vector<RingElem> comult_;
    std::vector<RingElem> counit_;
    std::optional<std::vector<RingElem>> antipode_;
};

struct HopfViolation {
    std::string identity;
    std::vector<unsigned> indices;
};

// Verifies the bialgebra identities as finite tensor contractions; failures
// are data, not errors.
inline std::vector<HopfViolation> hopf_check(const FiniteHopf& H) {
    std::vector<HopfViolation> bad;
    unsigned m = H.rank();
    const RingPtr& R = H.ring();
    auto dl = [&](unsigned a, unsigned b) {
        return a == b ? RingElem::one(R) : RingElem::zero(R);
    };

    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j)
            for (unsigned k = 0; k < m; ++k)
                for (unsigned l = 0; l < m; ++l) {
                    RingElem lhs = RingElem::zero(R), rhs = RingElem::zero(R);
                    for (unsigned t = 0; t < m; ++t) {
                        lhs += H.mult(i, j, t) * H.mult(t, k, l);
                        rhs += H.mult(j, k, t) * H.mult(i, t, l);
                    }
                    if (lhs != rhs) bad.push_back({"associativity", {i, j, k, l}});
                }

    for (unsigned i = 0; i < m; ++i)
        for (unsigned k = 0; k < m; ++k) {
            RingElem left = RingElem::zero(R), right = RingElem::zero(R);
            for (unsigned t = 0; t < m; ++t) {
                left += H.unit()[t] * H.mult(t, i, k);
                right += H.unit()[t] * H.mult(i, t, k);
            }
            if (left != dl(i, k)) bad.push_back({"left unit", {i, k}});
            if (right != dl(i, k)) bad.push_back({"right unit", {i, k}});
        }

    for (unsigned i = 0; i < m; ++i)
        for (unsigned a = 0; a < m; ++a)
            for (unsigned b = 0; b < m; ++b)
                for (unsigned c = 0; c < m; ++c) {
                    RingElem lhs = RingElem::zero(R), rhs = RingElem::zero(R);
                    for (unsigned t = 0; t < m; ++t) {
                        lhs += H.comult(i, t, c) * H.comult(t, a, b);
                        rhs += H.comult(i, a, t) * H.comult(t, b, c);
                    }
                    if (lhs != rhs) bad.push_back({"coassociativity", {i, a, b, c}});
                }

    for (unsigned i = 0; i < m; ++i)
        for (unsigned k = 0; k < m; ++k) {
            RingElem left = RingElem::zero(R), right = RingElem::zero(R);
            for (unsigned t = 0; t < m; ++t) {
                left += H.counit()[t] * H.comult(i, t, k);
                right += H.counit()[t] * H.comult(i, k, t);
            }
            if (left != dl(i, k)) bad.push_back({"left counit", {i, k}});
            if (right != dl(i, k)) bad.push_back({"right counit", {i, k}});
        }

    // psi is an algebra map
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j)
            for (unsigned a = 0; a < m; ++a)
                for (unsigned b = 0; b < m; ++b) {
                    RingElem lhs = RingElem::zero(R), rhs = RingElem::zero(R);
                    for (unsigned t = 0; t < m; ++t) lhs += H.mult(i, j, t) * H.comult(t, a, b);
                    for (unsigned p = 0; p < m; ++p)
                        for (unsigned q = 0; q < m; ++q)
                            for (unsigned r = 0; r < m; ++r)
                                for (unsigned s = 0; s < m; ++s) {
                                    RingElem f = H.comult(i, p, q) * H.comult(j, r, s);
                                    if (f.is_zero()) continue;
                                    rhs += f * H.mult(p, r, a) * H.mult(q, s, b);
                                }
                    if (lhs != rhs) bad.push_back({"comultiplication is not an algebra map", {i, j, a, b}});
                }

    // counit is an algebra map
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) {
            RingElem lhs = RingElem::zero(R);
            for (unsigned t = 0; t < m; ++t) lhs += H.mult(i, j, t) * H.counit()[t];
            if (lhs != H.counit()[i] * H.counit()[j])
                bad.push_back({"counit is not an algebra map", {i, j}});
        }

    // unit is a coalgebra map: psi(1) = 1 (x) 1 and eps(1) = 1
    for (unsigned a = 0; a < m; ++a)
        for (unsigned b = 0; b < m; ++b) {
            RingElem lhs = RingElem::zero(R);
            for (unsigned t = 0; t < m; ++t) lhs += H.unit()[t] * H.comult(t, a, b);
            if (lhs != H.unit()[a] * H.unit()[b]) bad.push_back({"unit is not grouplike", {a, b}});
        }
    RingElem eps1 = RingElem::zero(R);
    for (unsigned t = 0; t < m; ++t) eps1 += H.unit()[t] * H.counit()[t];
    if (eps1 != RingElem::one(R)) bad.push_back({"counit of unit", {}});

    return bad;
}

// eps(v) = 1 and psi(v) = v (x) v.
inline bool grouplike_check(const FiniteHopf& H, const std::vector<RingElem>& v) {
    unsigned m = H.rank();
    if (v.size() != m) raise(ErrorCode::RingMismatch, "grouplike_check: wrong vector length");
    const RingPtr& R = H.ring();
    RingElem eps = RingElem::zero(R);
    for (unsigned i = 0; i < m; ++i) eps += v[i] * H.counit()[i];
    if (eps != RingElem::one(R)) return false;
    for (unsigned a = 0; a < m; ++a)
        for (unsigned b = 0; b < m; ++b) {
            RingElem lhs = RingElem::zero(R);
            for (unsigned i = 0; i < m; ++i) lhs += v[i] * H.comult(i, a, b);
            if (lhs != v[a] * v[b]) return false;
        }
    return true;
}

// Antipode by the filtered recursion chi(e_i) = -sum_{k<i} a_ijk e_j chi(e_k)
// where a_ijk are the coefficients of the reduced comultiplication
// psi - 1 (x) id.  Requires that basis order to be strictly triangular and
// the unit to be the basis vector e_0; the result is verified against
// mu (1 (x) chi) psi = eta eps before it is returned.
inline std::vector<RingElem> hopf_antipode(const FiniteHopf& H) {
    unsigned m = H.rank();
    const RingPtr& R = H.ring();
    if (m == 0) raise(ErrorCode::NotFiltered, "empty Hopf algebra");
    for (unsigned i = 0; i < m; ++i)
        if (H.unit()[i] != (i == 0 ? RingElem::one(R) : RingElem::zero(R)))
            raise(ErrorCode::NotFiltered, "antipode recursion expects the unit at basis index 0");

    // reduced comultiplication a[i][j][k] = psi[i][j][k] - unit[j] delta_{k,i}
    auto reduced = [&](unsigned i, unsigned j, unsigned k) {
        RingElem v = H.comult(i, j, k);
        if (k == i) v -= H.unit()[j];
        return v;
    };
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j)
            for (unsigned k = i; k < m; ++k)
                if (!reduced(i, j, k).is_zero())
                    raise(ErrorCode::NotFiltered,
                          "reduced comultiplication is not triangular at basis index " +
                              std::to_string(i));

    std::vector<std::vector<RingElem>> chi(m);
    chi[0] = std::vector<RingElem>(m, RingElem::zero(R));
    chi[0][0] = RingElem::one(R);
    for (unsigned i = 1; i < m; ++i) {
        std::vector<RingElem> acc(m, RingElem::zero(R));
        for (unsigned k = 0; k < i; ++k)
            for (unsigned j = 0; j < m; ++j) {
                RingElem a = reduced(i, j, k);
                if (a.is_zero()) continue;
                std::vector<RingElem> prod = H.basis_mul(j, chi[k]);
                for (unsigned l = 0; l < m; ++l) acc[l] -= a * prod[l];
            }
        chi[i] = std::move(acc);
    }

    // verification: sum_{j,k} psi[i][j][k] e_j chi(e_k) = eps(e_i) 1
    for (unsigned i = 0; i < m; ++i) {
        std::vector<RingElem> conv(m, RingElem::zero(R));
        for (unsigned j = 0; j < m; ++j)
            for (unsigned k = 0; k < m; ++k) {
                RingElem a = H.comult(i, j, k);
                if (a.is_zero()) continue;
                std::vector<RingElem> prod = H.basis_mul(j, chi[k]);
                for (unsigned l = 0; l < m; ++l) conv[l] += a * prod[l];
            }
        for (unsigned l = 0; l < m; ++l)
            if (conv[l] != H.counit()[i] * H.unit()[l])
                raise(ErrorCode::AntipodeVerificationFailed,
                      "antipode identity fails at basis index " + std::to_string(i));
    }

    std::vector<RingElem> flat;
    flat.reserve(static_cast<std::size_t>(m) * m);
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) flat.push_back(chi[i][j]);
    return flat;
}

// Cartier duality at structure-constant level: pure transposition, valid
// because the module is finitely generated free.
inline FiniteHopf cartier_dual(const FiniteHopf& H) {
    unsigned m = H.rank();
    FiniteHopf D(H.ring(), m);
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j)
            for (unsigned k = 0; k < m; ++k) {
                D.mult(i, j, k) = H.comult(k, i, j);
                D.comult(i, j, k) = H.mult(j, k, i);
            }
    D.unit() = H.counit();
    D.counit() = H.unit();
    if (H.antipode()) {
        std::vector<RingElem> chi(static_cast<std::size_t>(m) * m, RingElem::zero(H.ring()));
        for (unsigned i = 0; i < m; ++i)
            for (unsigned j = 0; j < m; ++j) chi[i * m + j] = H.antipode_entry(j, i);
        D.antipode() = std::move(chi);
    }
    return D;
}

// The group algebra R[Z/n]: basis g^0, ..., g^{n-1}, grouplike generators.
inline FiniteHopf hopf_group_algebra(const RingPtr& ring, unsigned n) {
    FiniteHopf H(ring, n);
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) H.mult(i, j, (i + j) % n) = RingElem::one(ring);
        H.comult(i, i, i) = RingElem::one(ring);
        H.counit()[i] = RingElem::one(ring);
    }
    H.unit()[0] = RingElem::one(ring);
    std::vector<RingElem> chi(static_cast<std::size_t>(n) * n, RingElem::zero(ring));
    for (unsigned i = 0; i < n; ++i) chi[i * n + ((n - i) % n)] = RingElem::one(ring);
    H.antipode() = std::move(chi);
    return H;
}

// The rank-m truncated divided-power algebra: e_i e_j = binom(i+j, i)
// e_{i+j}, psi(e_n) = sum_{i+j=n} e_i (x) e_j.  A Hopf algebra over F_p for
// m = p (the alpha_p-style example).
inline FiniteHopf hopf_divided_power(const RingPtr& ring, unsigned m) {
    FiniteHopf H(ring, m);
    for (unsigned i = 0; i < m; ++i) {
        for (unsigned j = 0; j < m; ++j)
            if (i + j < m)
                H.mult(i, j, i + j) = RingElem::constant(ring, mpq_class(binomial(i + j, i)));
        for (unsigned j = 0; j <= i; ++j) H.comult(i, j, i - j) = RingElem::one(ring);
    }
    H.unit()[0] = RingElem::one(ring);
    H.counit()[0] = RingElem::one(ring);
    return H;
}

}  // namespace fgcalc

#endif
