#ifndef FGCALC_FGL_HPP
#define FGCALC_FGL_HPP

#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fgcalc/ring.hpp"
#include "fgcalc/series.hpp"

namespace fgcalc {

class AxiomViolationError : public Error {
public:
    AxiomViolationError(std::string axiom, ExpVec exponent, std::string value)
        : Error(ErrorCode::AxiomViolation,
                axiom + " fails at exponent " + exp_string(exponent) + " with value " + value),
          axiom_(std::move(axiom)), exponent_(std::move(exponent)), value_(std::move(value)) {}

    const std::string& axiom() const { return axiom_; }
    const ExpVec& exponent() const { return exponent_; }
    const std::string& value() const { return value_; }

private:
    static std::string exp_string(const ExpVec& e) {
        std::string s = "(";
        for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
        return s + ")";
    }

    std::string axiom_;
    ExpVec exponent_;
    std::string value_;
};

// A bivariate series that passed the formal-group-law axioms to its order.
class FGL {
public:
    const RingPtr& ring() const { return F_.ring(); }
    const TruncSeries& series() const { return F_; }
    unsigned order() const { return F_.order(); }
    const std::string& var_x() const { return F_.vars()[0]; }
    const std::string& var_y() const { return F_.vars()[1]; }

    friend FGL fgl_validate(const TruncSeries& F, unsigned N);

private:
    explicit FGL(TruncSeries F) : F_(std::move(F)) {}
    TruncSeries F_;
};

namespace detail {

inline TruncSeries var_series(const RingPtr& R, const std::vector<std::string>& vars,
                              unsigned order, std::string_view name) {
    return TruncSeries::variable(R, vars, order, name);
}

// A variable name not colliding with ring generators or the names in use.
inline std::string fresh_var(const RingPtr& R, const std::vector<std::string>& taken,
                             const std::string& base) {
    std::string name = base;
    auto clashes = [&](const std::string& n) {
        if (R->generator_index(n) >= 0) return true;
        for (const auto& t : taken)
            if (t == n) return true;
        return false;
    };
    while (clashes(name)) name += "_";
    return name;
}

// First nonzero coefficient of `diff`, for axiom violation reports.
[[noreturn]] void report_violation(const std::string& axiom, const TruncSeries& diff);

}  // namespace detail

inline FGL fgl_validate(const TruncSeries& Fin, unsigned N) {
    if (Fin.vars().size() != 2)
        raise(ErrorCode::VariableMismatch, "a formal group law is a bivariate series");
    if (Fin.order() < N) raise(ErrorCode::OrderTooLow, "series order below requested validation order");
    TruncSeries F = Fin.truncated(N);
    const RingPtr& R = F.ring();
    const auto& vars = F.vars();

    TruncSeries x = detail::var_series(R, vars, N, vars[0]);
    TruncSeries y = detail::var_series(R, vars, N, vars[1]);
    TruncSeries zero2 = TruncSeries::zero(R, vars, N);

    TruncSeries unit_diff = series_subst(F, {x, zero2}) - x;
    if (!unit_diff.is_zero()) detail::report_violation("unit axiom F(x,0) = x", unit_diff);

    TruncSeries sym_diff = series_subst(F, {y, x}) - F;
    if (!sym_diff.is_zero()) detail::report_violation("commutativity F(x,y) = F(y,x)", sym_diff);

    std::vector<std::string> xyz{vars[0], vars[1], detail::fresh_var(R, vars, "z")};
    TruncSeries X = detail::var_series(R, xyz, N, xyz[0]);
    TruncSeries Y = detail::var_series(R, xyz, N, xyz[1]);
    TruncSeries Z = detail::var_series(R, xyz, N, xyz[2]);
    TruncSeries Fxy = series_subst(F, {X, Y});
    TruncSeries Fyz = series_subst(F, {Y, Z});
    TruncSeries assoc = series_subst(F, {Fxy, Z}) - series_subst(F, {X, Fyz});
    if (!assoc.is_zero()) detail::report_violation("associativity F(F(x,y),z) = F(x,F(y,z))", assoc);

    return FGL(F);
}

// The group-law series with relations of the symmetric-generator model of
// the Lazard ring at a finite order: generators a_kl for 1 <= k <= l with
// k + l <= N - 1, graded by 1 - k - l; relations are the coefficients of the
// associator, exported rather than imposed.
struct UniversalFGLData {
    RingPtr ring;
    TruncSeries F;                                    // bivariate (x, y)
    std::vector<std::pair<ExpVec, RingElem>> relations;  // associator coefficient per (i,j,k)
};

inline std::string universal_generator_name(unsigned k, unsigned l) {
    if (k <= 9 && l <= 9) return "a" + std::to_string(k) + std::to_string(l);
    return "a" + std::to_string(k) + "_" + std::to_string(l);
}

inline UniversalFGLData universal_fgl(unsigned N, const CancelToken* token = nullptr) {
    if (N < 2) raise(ErrorCode::OrderTooLow, "universal FGL needs order >= 2");
    std::vector<Generator> gens;
    for (unsigned k = 1; k < N; ++k)
        for (unsigned l = k; k + l <= N - 1; ++l)
            gens.push_back({universal_generator_name(k, l), 1 - static_cast<long>(k) - static_cast<long>(l),
                            std::nullopt});
    RingPtr R = RingDesc::make(BaseRing::Integers, 0, std::move(gens));

    std::vector<std::string> xy{"x", "y"};
    TruncSeries F = TruncSeries::variable(R, xy, N, "x") + TruncSeries::variable(R, xy, N, "y");
    for (unsigned k = 1; k < N; ++k) {
        for (unsigned l = k; k + l <= N - 1; ++l) {
            RingElem a = RingElem::generator(R, universal_generator_name(k, l));
            F.set_term(ExpVec{k, l}, a);
            if (l > k) F.set_term(ExpVec{l, k}, a);
        }
    }

    UniversalFGLData data{R, F, {}};
    std::vector<std::string> xyz{"x", "y", "z"};
    TruncSeries X = detail::var_series(R, xyz, N, "x");
    TruncSeries Y = detail::var_series(R, xyz, N, "y");
    TruncSeries Z = detail::var_series(R, xyz, N, "z");
    TruncSeries Fxy = series_subst(F, {X, Y}, token);
    TruncSeries Fyz = series_subst(F, {Y, Z}, token);
    TruncSeries assoc = series_subst(F, {Fxy, Z}, token) - series_subst(F, {X, Fyz}, token);
    for (const auto& [e, c] : assoc.terms()) {
        check_cancel(token);
        data.relations.emplace_back(e, c);
    }
    return data;
}

// The series inverse: the unique i with F(x, i(x)) = 0, solved degree by
// degree (the linear coefficient of F in y is 1, so each degree is corrected
// directly).
inline TruncSeries formal_inverse(const TruncSeries& F) {
    const RingPtr& R = F.ring();
    unsigned N = F.order();
    std::vector<std::string> xv{F.vars()[0]};
    TruncSeries x = TruncSeries::variable(R, xv, N, xv[0]);
    TruncSeries inv = -x;
    for (unsigned k = 2; k < N; ++k) {
        TruncSeries err = series_subst(F, {x, inv});
        RingElem e = err.coefficient_single(k);
        if (e.is_zero()) continue;
        inv.set_term(ExpVec{k}, inv.coefficient_single(k) - e);
    }
    if (!series_subst(F, {x, inv}).is_zero())
        raise(ErrorCode::InternalError, "formal inverse recursion failed");
    return inv;
}

// [n](x) for any integer n; works on any bivariate series with F(x,0) = x,
// validated or not (the universal series included).
inline TruncSeries n_series(const TruncSeries& F, long n) {
    const RingPtr& R = F.ring();
    unsigned N = F.order();
    std::vector<std::string> xv{F.vars()[0]};
    TruncSeries x = TruncSeries::variable(R, xv, N, xv[0]);
    if (n == 0) return TruncSeries::zero(R, xv, N);
    TruncSeries acc = x;
    for (long i = 2; i <= std::abs(n); ++i) acc = series_subst(F, {x, acc});
    if (n < 0) acc = series_compose(acc, formal_inverse(F));
    return acc;
}

inline TruncSeries n_series(const FGL& F, long n) { return n_series(F.series(), n); }

// The invertible-power-series action F_f = f(F(f^-1 x, f^-1 y)).
inline FGL fgl_conjugate(const FGL& F, const TruncSeries& f) {
    if (f.vars().size() != 1) raise(ErrorCode::VariableMismatch, "coordinate must be single-variable");
    require_same_ring(F.ring(), f.ring(), "fgl_conjugate");
    unsigned N = std::min(F.order(), f.order());
    TruncSeries finv = series_revert(f.truncated(N));
    const auto& vars = F.series().vars();
    TruncSeries xb = detail::var_series(F.ring(), vars, N, vars[0]);
    TruncSeries yb = detail::var_series(F.ring(), vars, N, vars[1]);
    TruncSeries inner = series_subst(F.series().truncated(N),
                                     {series_subst(finv, {xb}), series_subst(finv, {yb})});
    TruncSeries conj = series_subst(f.truncated(N), {inner});
    return fgl_validate(conj, N);
}

// phi is a homomorphism F -> G iff phi(F(x,y)) = G(phi(x), phi(y)).
inline bool hom_check(const FGL& F, const FGL& G, const TruncSeries& phi) {
    require_same_ring(F.ring(), G.ring(), "hom_check");
    require_same_ring(F.ring(), phi.ring(), "hom_check");
    if (phi.vars().size() != 1)
        raise(ErrorCode::VariableMismatch, "hom_check: phi must be single-variable");
    if (!phi.constant_term().is_zero())
        raise(ErrorCode::NotACoordinate, "hom_check: phi(0) must vanish");
    unsigned N = std::min({F.order(), G.order(), phi.order()});
    const auto& vars = F.series().vars();
    TruncSeries xb = detail::var_series(F.ring(), vars, N, vars[0]);
    TruncSeries yb = detail::var_series(F.ring(), vars, N, vars[1]);
    TruncSeries lhs = series_subst(phi.truncated(N), {F.series().truncated(N)});
    TruncSeries rhs = series_subst(G.series().truncated(N),
                                   {series_subst(phi.truncated(N), {xb}),
                                    series_subst(phi.truncated(N), {yb})});
    return lhs == rhs;
}

class NotAdditiveError : public Error {
public:
    explicit NotAdditiveError(ExpVec witness)
        : Error(ErrorCode::NotAdditive, "additivity fails at exponent witness"), witness_(std::move(witness)) {}
    const ExpVec& witness() const { return witness_; }

private:
    ExpVec witness_;
};

// Over a ring of characteristic p, an additive series is sum a_k x^{p^k};
// returns (a_0, a_1, ...), trailing zeros trimmed.
inline std::vector<RingElem> additive_decompose(const TruncSeries& f, unsigned long p) {
    const RingPtr& R = f.ring();
    if (!has_characteristic(R, p))
        raise(ErrorCode::WrongCharacteristic, "ring does not have characteristic p");
    if (f.vars().size() != 1)
        raise(ErrorCode::VariableMismatch, "additive_decompose: single-variable series required");
    if (!f.constant_term().is_zero()) throw NotAdditiveError(ExpVec{0, 0});
    unsigned N = f.order();
    std::vector<std::string> xy{f.vars()[0], detail::fresh_var(R, f.vars(), "y")};
    TruncSeries xb = detail::var_series(R, xy, N, xy[0]);
    TruncSeries yb = detail::var_series(R, xy, N, xy[1]);
    TruncSeries diff = series_subst(f, {xb + yb}) - series_subst(f, {xb}) - series_subst(f, {yb});
    if (!diff.is_zero()) throw NotAdditiveError(diff.terms().begin()->first);

    std::vector<RingElem> out;
    for (const auto& [e, c] : f.terms()) {
        unsigned long k = e[0];
        unsigned long idx = 0;
        while (k % p == 0) {
            k /= p;
            ++idx;
        }
        if (k != 1) throw NotAdditiveError(e);  // unreachable for genuinely additive input
        if (out.size() <= idx) out.resize(idx + 1, RingElem::zero(R));
        out[idx] = c;
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

// H(s) = D_2 F(s, 0); H(0) = 1 and the invariant differential is dx/H(x).
inline TruncSeries invariant_differential(const TruncSeries& F) {
    const RingPtr& R = F.ring();
    unsigned N = F.order();
    TruncSeries dF = series_derivative(F, F.vars()[1]);
    std::vector<std::string> xv{F.vars()[0]};
    unsigned M = N > 0 ? N - 1 : 0;
    TruncSeries H = TruncSeries::zero(R, xv, M);
    for (const auto& [e, c] : dF.terms())
        if (e[1] == 0) H.set_term(ExpVec{e[0]}, c);
    return H;
}

inline TruncSeries invariant_differential(const FGL& F) {
    TruncSeries H = invariant_differential(F.series());
    if (H.constant_term() != RingElem::one(F.ring()))
        raise(ErrorCode::InternalError, "invariant differential does not start at 1");
    return H;
}

// The normalized logarithm over a Q-algebra: log' = 1/H, log(0) = 0.
inline TruncSeries fgl_log(const FGL& F) {
    if (F.ring()->base() != BaseRing::Rationals)
        raise(ErrorCode::RequiresRationalCoefficients, "logarithm needs a Q-algebra base");
    TruncSeries Hinv = series_invert(invariant_differential(F));
    std::vector<std::string> xv{F.var_x()};
    TruncSeries log = TruncSeries::zero(F.ring(), xv, F.order());
    for (const auto& [e, c] : Hinv.terms())
        log.set_term(ExpVec{e[0] + 1}, c.scaled(mpq_class(1, e[0] + 1)));
    return log;
}

// In characteristic p a series with vanishing differential is v(vars^p).
inline TruncSeries frobenius_decompose(const TruncSeries& f, unsigned long p) {
    const RingPtr& R = f.ring();
    if (!has_characteristic(R, p))
        raise(ErrorCode::WrongCharacteristic, "ring does not have characteristic p");
    for (const auto& v : f.vars())
        if (!series_derivative(f, v).is_zero())
            raise(ErrorCode::DerivativeNotZero, "derivative in " + v + " does not vanish");
    unsigned N = f.order();
    TruncSeries out = TruncSeries::zero(R, f.vars(), (N - 1) / static_cast<unsigned>(p) + 1);
    for (const auto& [e, c] : f.terms()) {
        ExpVec e2(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] % p != 0)
                raise(ErrorCode::DerivativeNotZero, "exponent not divisible by p");
            e2[i] = e[i] / static_cast<unsigned>(p);
        }
        out.set_term(std::move(e2), c);
    }
    return out;
}

struct HeightResult {
    bool infinite_up_to_order = false;
    unsigned checked_order = 0;
    unsigned height = 0;  // meaningful when finite
    bool unit_flag = false;
};

// Series-level height: the p-adic valuation common to all exponents of the
// [p]-series, with a unit flag on the coefficient of x^{p^height}.
// Truncation cannot certify an infinite height, so that case is reported as
// "infinite up to the checked order".
inline HeightResult height(const FGL& F, unsigned long p) {
    if (!has_characteristic(F.ring(), p))
        raise(ErrorCode::WrongCharacteristic, "height needs characteristic p");
    TruncSeries ps = n_series(F, static_cast<long>(p));
    HeightResult res;
    res.checked_order = F.order();
    if (ps.is_zero()) {
        res.infinite_up_to_order = true;
        return res;
    }
    unsigned n = 0;
    bool first = true;
    for (const auto& [e, c] : ps.terms()) {
        unsigned long m = e[0];
        unsigned v = 0;
        while (m % p == 0) {
            m /= p;
            ++v;
        }
        n = first ? v : std::min(n, v);
        first = false;
    }
    res.height = n;
    unsigned long pn = 1;
    for (unsigned i = 0; i < n; ++i) pn *= p;
    res.unit_flag = is_unit(ps.coefficient_single(static_cast<unsigned>(pn)));
    return res;
}

enum class Regularity { Regular, NotRegular, Unknown };

struct LandweberEntry {
    RingElem u;
    Regularity flag = Regularity::Unknown;
};

struct LandweberResult {
    std::vector<LandweberEntry> entries;
    // The ideal reached the whole ring before nmax entries were produced.
    bool quotient_collapsed = false;
};

namespace detail {

inline Regularity regularity_in(const RingElem& u) {
    const RingPtr& R = u.ring();
    if (u.is_zero()) return Regularity::NotRegular;
    if (is_unit(u)) return Regularity::Regular;
    if (is_nilpotent(u)) return Regularity::NotRegular;
    bool field_base = R->base() == BaseRing::Rationals ||
                      (R->base() == BaseRing::IntegersMod && factorize(R->modulus()).size() == 1 &&
                       factorize(R->modulus())[0].second == 1);
    bool free_gens = true;
    for (const auto& g : R->generators())
        if (g.power_relation) free_gens = false;
    if (R->base() == BaseRing::Integers && free_gens) return Regularity::Regular;  // domain
    if (field_base && free_gens) return Regularity::Regular;                       // domain
    return Regularity::Unknown;
}

}  // namespace detail

// u_0 = p; u_n = coefficient of x^{p^n} in the [p]-series computed modulo
// (p, u_1, ..., u_{n-1}).  Quotients are taken only along representable
// ideals: p collapses the base to F_p, and later u_i must be base constants.
inline LandweberResult landweber_sequence(const FGL& F, unsigned long p, unsigned nmax) {
    if (F.ring()->base() != BaseRing::Integers)
        raise(ErrorCode::UnsupportedRing, "landweber_sequence expects a base of Z");
    LandweberResult res;
    res.entries.push_back({RingElem::constant(F.ring(), mpq_class(static_cast<long>(p))),
                           Regularity::Regular});  // Z[gens] is p-torsion-free
    if (nmax == 0) return res;

    std::vector<Generator> gens = F.ring()->generators();
    RingPtr cur = RingDesc::make(BaseRing::IntegersMod, p, gens);
    TruncSeries Fp = TruncSeries::zero(cur, F.series().vars(), F.order());
    for (const auto& [e, c] : F.series().terms()) {
        RingElem mapped = change_base(c, cur);
        if (!mapped.is_zero()) Fp.set_term(e, mapped);
    }

    unsigned long pn = 1;
    for (unsigned n = 1; n <= nmax; ++n) {
        pn *= p;
        if (pn >= Fp.order())
            raise(ErrorCode::OrderTooLow, "landweber_sequence: order does not reach x^{p^n}");
        TruncSeries ps = n_series(Fp, static_cast<long>(p));
        RingElem u = ps.coefficient_single(static_cast<unsigned>(pn));
        res.entries.push_back({u, detail::regularity_in(u)});
        if (n == nmax) break;
        // Take the next quotient when it stays representable.
        if (u.is_zero()) continue;  // ideal unchanged
        bool constant = u.terms().size() == 1 && u.terms().begin()->first == ExpVec(gens.size(), 0);
        if (!constant)
            raise(ErrorCode::UnsupportedRing,
                  "landweber_sequence: quotient by a non-constant u_n is not representable");
        if (is_unit(u)) {
            res.quotient_collapsed = true;  // R/(u) = 0
            break;
        }
        mpz_class m;
        mpz_gcd(m.get_mpz_t(), u.constant_coefficient().get_num().get_mpz_t(),
                cur->modulus().get_mpz_t());
        cur = RingDesc::make(BaseRing::IntegersMod, m, gens);
        TruncSeries next = TruncSeries::zero(cur, Fp.vars(), Fp.order());
        for (const auto& [e, c] : Fp.terms()) {
            RingElem mapped = change_base(c, cur);
            if (!mapped.is_zero()) next.set_term(e, mapped);
        }
        Fp = next;
    }
    return res;
}

}  // namespace fgcalc

#include "fgcalc/print.hpp"

namespace fgcalc {
namespace detail {

[[noreturn]] inline void report_violation(const std::string& axiom, const TruncSeries& diff) {
    const auto& [e, c] = *diff.terms().begin();
    throw AxiomViolationError(axiom, e, print_ring_elem(c));
}

}  // namespace detail
}  // namespace fgcalc

#endif

