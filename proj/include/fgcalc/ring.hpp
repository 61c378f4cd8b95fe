#ifndef FGCALC_RING_HPP
#define FGCALC_RING_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fgcalc/error.hpp"
#include "fgcalc/numeric.hpp"

namespace fgcalc {

enum class BaseRing { Integers, Rationals, IntegersMod };

// One polynomial generator of a ring tower.  A power relation k means v^k = 0.
struct Generator {
    std::string name;
    long grade = 0;
    std::optional<unsigned> power_relation;
};

class RingDesc;
using RingPtr = std::shared_ptr<const RingDesc>;

// Exponent vector over the generators of a ring, one slot per generator.
using ExpVec = std::vector<std::uint32_t>;

// A constructible commutative ring: Z, Q or Z/n, extended by polynomial
// generators, optionally with pure power relations v^k = 0.
class RingDesc {
public:
    static RingPtr integers() { return std::make_shared<RingDesc>(BaseRing::Integers, 0, std::vector<Generator>{}); }
    static RingPtr rationals() { return std::make_shared<RingDesc>(BaseRing::Rationals, 0, std::vector<Generator>{}); }
    static RingPtr integers_mod(const mpz_class& n) {
        return std::make_shared<RingDesc>(BaseRing::IntegersMod, n, std::vector<Generator>{});
    }
    static RingPtr make(BaseRing base, const mpz_class& modulus, std::vector<Generator> gens) {
        return std::make_shared<RingDesc>(base, modulus, std::move(gens));
    }

    RingDesc(BaseRing base, const mpz_class& modulus, std::vector<Generator> gens)
        : base_(base), modulus_(modulus), gens_(std::move(gens)) {
        if (base_ == BaseRing::IntegersMod && modulus_ < 2)
            raise(ErrorCode::UnsupportedRing, "Z/n requires n >= 2");
        if (base_ != BaseRing::IntegersMod) modulus_ = 0;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].power_relation && *gens_[i].power_relation < 1)
                raise(ErrorCode::UnsupportedRing, "power relation must be >= 1");
            for (std::size_t j = i + 1; j < gens_.size(); ++j)
                if (gens_[i].name == gens_[j].name)
                    raise(ErrorCode::UnsupportedRing, "duplicate generator name " + gens_[i].name);
        }
    }

    RingPtr extended(Generator g) const {
        std::vector<Generator> gens = gens_;
        gens.push_back(std::move(g));
        return std::make_shared<RingDesc>(base_, modulus_, std::move(gens));
    }

    BaseRing base() const { return base_; }
    const mpz_class& modulus() const { return modulus_; }
    const std::vector<Generator>& generators() const { return gens_; }

    int generator_index(std::string_view name) const {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name == name) return static_cast<int>(i);
        return -1;
    }

    bool operator==(const RingDesc& o) const {
        if (base_ != o.base_ || modulus_ != o.modulus_ || gens_.size() != o.gens_.size()) return false;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].name != o.gens_[i].name || gens_[i].grade != o.gens_[i].grade ||
                gens_[i].power_relation != o.gens_[i].power_relation)
                return false;
        }
        return true;
    }
    bool operator!=(const RingDesc& o) const { return !(*this == o); }

private:
    BaseRing base_;
    mpz_class modulus_;
    std::vector<Generator> gens_;
};

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    return a == b || (a && b && *a == *b);
}

inline void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where) {
    if (!same_ring(a, b)) raise(ErrorCode::RingMismatch, std::string(where) + ": ring descriptors differ");
}

namespace detail {

// Coefficient canonical form per base: Z keeps integers; Q keeps reduced
// fractions; Z/n keeps representatives in [0, n).
inline bool canonical_coeff(const RingDesc& ring, mpq_class& c) {
    c.canonicalize();
    switch (ring.base()) {
        case BaseRing::Integers:
            if (c.get_den() != 1)
                raise(ErrorCode::InternalError, "non-integral coefficient over Z");
            break;
        case BaseRing::Rationals:
            break;
        case BaseRing::IntegersMod: {
            if (c.get_den() != 1)
                raise(ErrorCode::InternalError, "non-integral coefficient over Z/n");
            mpz_class r;
            mpz_mod(r.get_mpz_t(), c.get_num().get_mpz_t(), ring.modulus().get_mpz_t());
            c = r;
            break;
        }
    }
    return c != 0;
}

inline bool base_nilpotent(const RingDesc& ring, const mpq_class& c) {
    if (c == 0) return true;
    if (ring.base() != BaseRing::IntegersMod) return false;
    return mpz_divisible_p(c.get_num().get_mpz_t(), radical(ring.modulus()).get_mpz_t()) != 0;
}

inline bool base_unit(const RingDesc& ring, const mpq_class& c) {
    if (c == 0) return false;
    switch (ring.base()) {
        case BaseRing::Integers: return c == 1 || c == -1;
        case BaseRing::Rationals: return true;
        case BaseRing::IntegersMod: {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), c.get_num().get_mpz_t(), ring.modulus().get_mpz_t());
            return g == 1;
        }
    }
    return false;
}

inline mpq_class base_inverse(const RingDesc& ring, const mpq_class& c) {
    switch (ring.base()) {
        case BaseRing::Integers:
            if (c == 1 || c == -1) return c;
            raise(ErrorCode::NotAUnit, "only +-1 are units in Z");
        case BaseRing::Rationals:
            if (c == 0) raise(ErrorCode::NotAUnit, "zero is not a unit");
            return 1 / c;
        case BaseRing::IntegersMod: {
            mpz_class inv;
            if (!mpz_invert(inv.get_mpz_t(), c.get_num().get_mpz_t(), ring.modulus().get_mpz_t()))
                raise(ErrorCode::NotAUnit, "element not invertible mod n");
            return mpq_class(inv);
        }
    }
    raise(ErrorCode::InternalError, "unreachable");
}

}  // namespace detail

// An element of a RingDesc in canonical form: a finite sum of monomials in
// the generators with base coefficients.  Immutable value semantics; all
// operations return new elements.
class RingElem {
public:
    RingElem() = default;

    static RingElem zero(RingPtr ring) { return RingElem(std::move(ring)); }

    static RingElem constant(RingPtr ring, const mpq_class& c) {
        RingElem r(std::move(ring));
        mpq_class cc = c;
        if (detail::canonical_coeff(*r.ring_, cc)) r.terms_.emplace(ExpVec(r.ring_->generators().size(), 0), cc);
        return r;
    }

    static RingElem one(RingPtr ring) { return constant(std::move(ring), 1); }

    static RingElem generator(RingPtr ring, std::string_view name) {
        int idx = ring->generator_index(name);
        if (idx < 0) raise(ErrorCode::UnsupportedRing, "no generator named " + std::string(name));
        ExpVec e(ring->generators().size(), 0);
        e[static_cast<std::size_t>(idx)] = 1;
        return monomial(std::move(ring), std::move(e), 1);
    }

    static RingElem monomial(RingPtr ring, ExpVec e, const mpq_class& c) {
        RingElem r(std::move(ring));
        r.add_term(std::move(e), c);
        return r;
    }

    const RingPtr& ring() const { return ring_; }
    const std::map<ExpVec, mpq_class>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    mpq_class constant_coefficient() const {
        ExpVec e(ring_->generators().size(), 0);
        auto it = terms_.find(e);
        return it == terms_.end() ? mpq_class(0) : it->second;
    }

    friend RingElem operator+(const RingElem& a, const RingElem& b) {
        require_same_ring(a.ring_, b.ring_, "add");
        RingElem r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    friend RingElem operator-(const RingElem& a) {
        RingElem r(a.ring_);
        for (const auto& [e, c] : a.terms_) r.add_term(e, -c);
        return r;
    }

    friend RingElem operator-(const RingElem& a, const RingElem& b) { return a + (-b); }

    friend RingElem operator*(const RingElem& a, const RingElem& b) {
        require_same_ring(a.ring_, b.ring_, "mul");
        RingElem r(a.ring_);
        const auto& gens = a.ring_->generators();
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                ExpVec e(ea.size());
                bool dead = false;
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] = ea[i] + eb[i];
                    if (gens[i].power_relation && e[i] >= *gens[i].power_relation) {
                        dead = true;
                        break;
                    }
                }
                if (!dead) r.add_term(std::move(e), ca * cb);
            }
        }
        return r;
    }

    RingElem& operator+=(const RingElem& b) { return *this = *this + b; }
    RingElem& operator-=(const RingElem& b) { return *this = *this - b; }
    RingElem& operator*=(const RingElem& b) { return *this = *this * b; }

    RingElem scaled(const mpq_class& s) const {
        RingElem r(ring_);
        for (const auto& [e, c] : terms_) r.add_term(e, c * s);
        return r;
    }

    RingElem pow(unsigned long k) const {
        RingElem acc = one(ring_);
        RingElem base = *this;
        while (k) {
            if (k & 1) acc *= base;
            base = (k >>= 1) ? base * base : base;
        }
        return acc;
    }

    friend bool operator==(const RingElem& a, const RingElem& b) {
        return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const RingElem& a, const RingElem& b) { return !(a == b); }

    // true iff the term's monomial contains a generator with a power relation
    // (such a monomial is automatically nilpotent).
    bool term_has_quotient_generator(const ExpVec& e) const {
        const auto& gens = ring_->generators();
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0 && gens[i].power_relation) return true;
        return false;
    }

private:
    explicit RingElem(RingPtr ring) : ring_(std::move(ring)) {}

    void add_term(ExpVec e, const mpq_class& c) {
        const auto& gens = ring_->generators();
        if (e.size() != gens.size()) raise(ErrorCode::InternalError, "exponent vector size mismatch");
        for (std::size_t i = 0; i < e.size(); ++i)
            if (gens[i].power_relation && e[i] >= *gens[i].power_relation) return;  // killed by v^k = 0
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) it->second += c;
        if (!detail::canonical_coeff(*ring_, it->second)) terms_.erase(it);
    }

    RingPtr ring_;
    std::map<ExpVec, mpq_class> terms_;
};

// Structural nilpotence test: a term lies in the nilradical iff it carries a
// power-relation generator or its image with those generators killed has a
// nilpotent base coefficient (rad(n) | a in Z/n, zero in Z and Q).
inline bool is_nilpotent(const RingElem& a) {
    for (const auto& [e, c] : a.terms()) {
        if (a.term_has_quotient_generator(e)) continue;
        if (!detail::base_nilpotent(*a.ring(), c)) return false;
    }
    return true;
}

// Unit test: constant base term a unit, everything else nilpotent.
inline bool is_unit(const RingElem& a) {
    if (!detail::base_unit(*a.ring(), a.constant_coefficient())) return false;
    ExpVec zero_exp(a.ring()->generators().size(), 0);
    for (const auto& [e, c] : a.terms()) {
        if (e == zero_exp) continue;
        if (a.term_has_quotient_generator(e)) continue;
        if (!detail::base_nilpotent(*a.ring(), c)) return false;
    }
    return true;
}

inline constexpr unsigned kNilpotencyCap = 4096;

// Smallest m >= 1 with a^m = 0.  Pre: is_nilpotent(a).
inline unsigned nilpotency_order(const RingElem& a) {
    RingElem p = a;
    for (unsigned m = 1; m <= kNilpotencyCap; ++m) {
        if (p.is_zero()) return m;
        p *= a;
    }
    raise(ErrorCode::InternalError, "nilpotency order exceeds cap");
}

// Inverse of a unit via geometric expansion of the nilpotent part:
// a = c (1 + q) with q nilpotent, a^-1 = c^-1 (1 - q + q^2 - ...).
inline RingElem invert_unit(const RingElem& a) {
    if (!is_unit(a)) raise(ErrorCode::NotAUnit, "invert_unit on a non-unit");
    mpq_class cinv = detail::base_inverse(*a.ring(), a.constant_coefficient());
    RingElem q = RingElem::one(a.ring()) - a.scaled(cinv);  // nilpotent
    RingElem sum = RingElem::one(a.ring());
    RingElem p = q;
    for (unsigned m = 0; m < kNilpotencyCap && !p.is_zero(); ++m) {
        sum += p;
        p *= q;
    }
    if (!p.is_zero()) raise(ErrorCode::InternalError, "geometric expansion did not terminate");
    return sum.scaled(cinv);
}

inline constexpr unsigned kIdempotentCap = 64;

// Idempotent lifting: given e with e^2 - e nilpotent, returns the unique
// idempotent congruent to e mod nilpotents.  Uses f = 1 - e, finds n with
// (ef)^n = 0 by doubling up to the cap, then c = e^n + f^n - 1 and
// e~ = e^n (1 + c)^-1.
inline RingElem lift_idempotent(const RingElem& e, unsigned cap = kIdempotentCap) {
    if (!is_nilpotent(e * e - e))
        raise(ErrorCode::NotAlmostIdempotent, "e^2 - e is not nilpotent");
    RingElem f = RingElem::one(e.ring()) - e;
    RingElem ef = e * f;
    unsigned n = 1;
    RingElem p = ef;
    while (!p.is_zero()) {
        n *= 2;
        if (n > cap)
            raise(ErrorCode::NotAlmostIdempotent, "no vanishing power of e(1-e) below cap");
        p *= p;
    }
    RingElem en = e.pow(n);
    RingElem c = en + f.pow(n) - RingElem::one(e.ring());
    RingElem lifted = en * invert_unit(RingElem::one(e.ring()) + c);
    if (lifted * lifted != lifted)
        raise(ErrorCode::InternalError, "lifted element is not idempotent");
    return lifted;
}

// Complete orthogonal idempotent decomposition of Z/n along its prime
// factorization: one idempotent per prime power, components Z/p^k.
inline std::vector<std::pair<RingElem, RingPtr>> split_ring(const RingPtr& ring) {
    if (ring->base() != BaseRing::IntegersMod || !ring->generators().empty())
        raise(ErrorCode::UnsupportedRing, "split_ring handles plain Z/n only");
    const mpz_class& n = ring->modulus();
    std::vector<std::pair<RingElem, RingPtr>> out;
    for (const auto& [p, k] : factorize(n)) {
        mpz_class m;
        mpz_pow_ui(m.get_mpz_t(), p.get_mpz_t(), k);
        mpz_class q = n / m;
        mpz_class e;
        if (m == n) {
            e = 1;
        } else {
            mpz_class inv;
            if (!mpz_invert(inv.get_mpz_t(), q.get_mpz_t(), m.get_mpz_t()))
                raise(ErrorCode::InternalError, "cofactor not invertible");
            e = (q * inv) % n;
        }
        out.emplace_back(RingElem::constant(ring, mpq_class(e)), RingDesc::integers_mod(m));
    }
    return out;
}

// Re-express an element in a ring with the same generators but a smaller
// base (Z -> Z/n, Z/n -> Z/m with m | n, Z -> Q).
inline RingElem change_base(const RingElem& a, const RingPtr& target) {
    const auto& gens = a.ring()->generators();
    const auto& tgens = target->generators();
    if (gens.size() != tgens.size())
        raise(ErrorCode::RingMismatch, "change_base: generator lists differ");
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name != tgens[i].name || gens[i].power_relation != tgens[i].power_relation)
            raise(ErrorCode::RingMismatch, "change_base: generator lists differ");
    BaseRing from = a.ring()->base(), to = target->base();
    bool ok = (from == to && a.ring()->modulus() == target->modulus()) ||
              (from == BaseRing::Integers && to != BaseRing::Integers) ||
              (from == BaseRing::IntegersMod && to == BaseRing::IntegersMod &&
               mpz_divisible_p(a.ring()->modulus().get_mpz_t(), target->modulus().get_mpz_t()));
    if (!ok) raise(ErrorCode::UnsupportedRing, "change_base: no canonical map between bases");
    RingElem r = RingElem::zero(target);
    for (const auto& [e, c] : a.terms()) r += RingElem::monomial(target, e, c);
    return r;
}

inline bool has_characteristic(const RingPtr& ring, unsigned long p) {
    return RingElem::constant(ring, mpq_class(static_cast<long>(p))).is_zero();
}

// Total grade of a monomial under the stored generator grades.
inline long term_grade(const RingDesc& ring, const ExpVec& e) {
    long g = 0;
    const auto& gens = ring.generators();
    for (std::size_t i = 0; i < e.size(); ++i) g += static_cast<long>(e[i]) * gens[i].grade;
    return g;
}

// Homogeneity check; a zero element is homogeneous of any grade.
inline bool is_homogeneous(const RingElem& a, long* grade_out = nullptr) {
    bool first = true;
    long grade = 0;
    for (const auto& [e, c] : a.terms()) {
        long g = term_grade(*a.ring(), e);
        if (first) {
            grade = g;
            first = false;
        } else if (g != grade) {
            return false;
        }
    }
    if (grade_out && !first) *grade_out = grade;
    return true;
}

class SquareMatrix {
public:
    SquareMatrix(RingPtr ring, std::size_t n)
        : ring_(std::move(ring)), n_(n), entries_(n * n, RingElem::zero(ring_)) {}

    std::size_t dim() const { return n_; }
    const RingPtr& ring() const { return ring_; }

    RingElem& at(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    const RingElem& at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    void set(std::size_t i, std::size_t j, RingElem v) {
        require_same_ring(ring_, v.ring(), "matrix entry");
        entries_[i * n_ + j] = std::move(v);
    }

    friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
        return a.n_ == b.n_ && same_ring(a.ring_, b.ring_) && a.entries_ == b.entries_;
    }

private:
    RingPtr ring_;
    std::size_t n_;
    std::vector<RingElem> entries_;
};

// Division-free characteristic polynomial det(tI - M) by the Berkowitz
// vector recurrence; valid over any commutative ring.  Returns coefficients
// highest power first, so [0] = 1.
inline std::vector<RingElem> charpoly(const SquareMatrix& M) {
    const RingPtr& R = M.ring();
    std::size_t n = M.dim();
    std::vector<RingElem> C{RingElem::one(R)};
    if (n == 0) return C;
    C.push_back(-M.at(0, 0));
    for (std::size_t r = 2; r <= n; ++r) {
        // Leading principal block A of size r-1, bordered by row vector
        // Row = M[r-1][0..r-2] and column vector Col = M[0..r-2][r-1].
        std::vector<RingElem> t(r + 1, RingElem::zero(R));
        t[0] = RingElem::one(R);
        t[1] = -M.at(r - 1, r - 1);
        std::vector<RingElem> w(r - 1, RingElem::zero(R));
        for (std::size_t i = 0; i < r - 1; ++i) w[i] = M.at(i, r - 1);
        for (std::size_t i = 2; i <= r; ++i) {
            RingElem dot = RingElem::zero(R);
            for (std::size_t j = 0; j < r - 1; ++j) dot += M.at(r - 1, j) * w[j];
            t[i] = -dot;
            if (i < r) {
                std::vector<RingElem> w2(r - 1, RingElem::zero(R));
                for (std::size_t a = 0; a < r - 1; ++a)
                    for (std::size_t b = 0; b < r - 1; ++b) w2[a] += M.at(a, b) * w[b];
                w = std::move(w2);
            }
        }
        std::vector<RingElem> C2(r + 1, RingElem::zero(R));
        for (std::size_t i = 0; i <= r; ++i)
            for (std::size_t j = 0; j < C.size() && j <= i; ++j)
                if (i - j <= r) C2[i] += t[i - j] * C[j];
        C = std::move(C2);
    }
    return C;
}

// Division-free determinant via the constant charpoly coefficient.
inline RingElem matrix_det(const SquareMatrix& M) {
    std::vector<RingElem> c = charpoly(M);
    RingElem d = c.back();
    return (M.dim() % 2 == 1) ? -d : d;
}

}  // namespace fgcalc

#endif
