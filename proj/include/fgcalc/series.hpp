#ifndef FGCALC_SERIES_HPP
#define FGCALC_SERIES_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fgcalc/ring.hpp"

namespace fgcalc {

// Multivariate power series truncated by total degree: terms of total degree
// >= order are dropped and considered unknown.  Operations record the
// smallest order at which the result is exact; precision is never silently
// extended.
class TruncSeries {
public:
    TruncSeries(RingPtr ring, std::vector<std::string> vars, unsigned order)
        : ring_(std::move(ring)), vars_(std::move(vars)), order_(order) {
        if (vars_.empty()) raise(ErrorCode::VariableMismatch, "series needs at least one variable");
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (ring_->generator_index(vars_[i]) >= 0)
                raise(ErrorCode::VariableMismatch,
                      "series variable " + vars_[i] + " collides with a ring generator");
            for (std::size_t j = i + 1; j < vars_.size(); ++j)
                if (vars_[i] == vars_[j])
                    raise(ErrorCode::VariableMismatch, "duplicate series variable " + vars_[i]);
        }
    }

    static TruncSeries zero(RingPtr ring, std::vector<std::string> vars, unsigned order) {
        return TruncSeries(std::move(ring), std::move(vars), order);
    }

    static TruncSeries constant(RingPtr ring, std::vector<std::string> vars, unsigned order,
                                const RingElem& c) {
        TruncSeries s(std::move(ring), std::move(vars), order);
        require_same_ring(s.ring_, c.ring(), "series constant");
        s.add_term(ExpVec(s.vars_.size(), 0), c);
        return s;
    }

    static TruncSeries variable(RingPtr ring, std::vector<std::string> vars, unsigned order,
                                std::string_view name) {
        TruncSeries s(std::move(ring), std::move(vars), order);
        ExpVec e(s.vars_.size(), 0);
        e[s.var_index(name)] = 1;
        s.add_term(std::move(e), RingElem::one(s.ring_));
        return s;
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<std::string>& vars() const { return vars_; }
    unsigned order() const { return order_; }
    const std::map<ExpVec, RingElem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    std::size_t var_index(std::string_view name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return i;
        raise(ErrorCode::VariableMismatch, "no series variable named " + std::string(name));
    }

    RingElem coefficient(const ExpVec& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? RingElem::zero(ring_) : it->second;
    }

    RingElem coefficient_single(unsigned k) const {
        if (vars_.size() != 1) raise(ErrorCode::VariableMismatch, "single-variable access on multivariate series");
        return coefficient(ExpVec{k});
    }

    RingElem constant_term() const { return coefficient(ExpVec(vars_.size(), 0)); }

    // Lowers the truncation order, dropping now-unknown terms.
    TruncSeries truncated(unsigned order) const {
        TruncSeries s(ring_, vars_, std::min(order, order_));
        for (const auto& [e, c] : terms_) s.add_term(e, c);
        return s;
    }

    // Declares a higher order for data known to be exact (polynomials built
    // term-by-term); not for results of truncating arithmetic.
    TruncSeries assume_order(unsigned order) const {
        TruncSeries s(ring_, vars_, order);
        for (const auto& [e, c] : terms_) s.add_term(e, c);
        return s;
    }

    void set_term(ExpVec e, const RingElem& c) {
        require_same_ring(ring_, c.ring(), "series term");
        terms_.erase(e);
        add_term(std::move(e), c);
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        a.require_compatible(b, "series add");
        TruncSeries r(a.ring_, a.vars_, std::min(a.order_, b.order_));
        for (const auto& [e, c] : a.terms_) r.add_term(e, c);
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    friend TruncSeries operator-(const TruncSeries& a) {
        TruncSeries r(a.ring_, a.vars_, a.order_);
        for (const auto& [e, c] : a.terms_) r.add_term(e, -c);
        return r;
    }

    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        a.require_compatible(b, "series mul");
        TruncSeries r(a.ring_, a.vars_, std::min(a.order_, b.order_));
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                ExpVec e(ea.size());
                unsigned deg = 0;
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] = ea[i] + eb[i];
                    deg += e[i];
                }
                if (deg < r.order_) r.add_term(std::move(e), ca * cb);
            }
        }
        return r;
    }

    TruncSeries& operator+=(const TruncSeries& b) { return *this = *this + b; }
    TruncSeries& operator-=(const TruncSeries& b) { return *this = *this - b; }
    TruncSeries& operator*=(const TruncSeries& b) { return *this = *this * b; }

    TruncSeries scaled(const RingElem& c) const {
        require_same_ring(ring_, c.ring(), "series scale");
        TruncSeries r(ring_, vars_, order_);
        for (const auto& [e, t] : terms_) r.add_term(e, t * c);
        return r;
    }

    TruncSeries pow(unsigned k) const {
        TruncSeries acc = constant(ring_, vars_, order_, RingElem::one(ring_));
        TruncSeries base = *this;
        while (k) {
            if (k & 1) acc *= base;
            if (k >>= 1) base *= base;
        }
        return acc;
    }

    // Equality is equality of stored terms (over identical ring and vars).
    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return same_ring(a.ring_, b.ring_) && a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

private:
    void require_compatible(const TruncSeries& b, const char* where) const {
        require_same_ring(ring_, b.ring_, where);
        if (vars_ != b.vars_)
            raise(ErrorCode::VariableMismatch, std::string(where) + ": variable lists differ");
    }

    void add_term(ExpVec e, const RingElem& c) {
        unsigned deg = std::accumulate(e.begin(), e.end(), 0u);
        if (deg >= order_) return;
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        } else if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }

    RingPtr ring_;
    std::vector<std::string> vars_;
    unsigned order_;
    std::map<ExpVec, RingElem> terms_;
};

namespace detail {

inline unsigned nilpotent_budget(const RingElem& c) {
    if (c.is_zero()) return 0;
    if (!is_nilpotent(c))
        raise(ErrorCode::NonNilpotentConstantTerm, "substituted series has a non-nilpotent constant term");
    return nilpotency_order(c) - 1;
}

}  // namespace detail

// Substitutes a series for every variable of f.  All images must live over
// the same ring and the same target variable list, and must have zero or
// nilpotent constant terms.  The result order accounts for f's unknown tail:
// a dropped monomial of degree d contributes only above d - sum(m_i - 1)
// where m_i is the nilpotency order of the i-th constant term.  The token is
// polled once per term of f.
inline TruncSeries series_subst(const TruncSeries& f, const std::vector<TruncSeries>& images,
                                const CancelToken* token = nullptr) {
    if (images.size() != f.vars().size())
        raise(ErrorCode::VariableMismatch, "series_subst: one image per variable required");
    const TruncSeries& model = images.front();
    unsigned budget = 0;
    for (const auto& g : images) {
        require_same_ring(f.ring(), g.ring(), "series_subst");
        if (g.vars() != model.vars() || g.order() != model.order())
            raise(ErrorCode::VariableMismatch, "series_subst: images disagree on variables or order");
        budget += detail::nilpotent_budget(g.constant_term());
    }
    unsigned order = std::min(model.order(),
                              f.order() > budget ? f.order() - budget : 0u);
    if (order == 0) raise(ErrorCode::OrderTooLow, "series_subst: no exact coefficients remain");

    TruncSeries result = TruncSeries::zero(f.ring(), model.vars(), order);
    // Memoized powers per variable.
    std::vector<std::vector<TruncSeries>> powers(images.size());
    for (std::size_t i = 0; i < images.size(); ++i)
        powers[i].push_back(TruncSeries::constant(f.ring(), model.vars(), model.order(),
                                                  RingElem::one(f.ring())));
    auto power = [&](std::size_t i, unsigned k) -> const TruncSeries& {
        while (powers[i].size() <= k) powers[i].push_back(powers[i].back() * images[i]);
        return powers[i][k];
    };

    for (const auto& [e, c] : f.terms()) {
        check_cancel(token);
        TruncSeries term = TruncSeries::constant(f.ring(), model.vars(), model.order(), c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) term *= power(i, e[i]);
        result += term.truncated(order);
    }
    return result;
}

// Composition outer(inner) for single-variable outer.
inline TruncSeries series_compose(const TruncSeries& outer, const TruncSeries& inner) {
    if (outer.vars().size() != 1)
        raise(ErrorCode::VariableMismatch, "series_compose: outer series must be single-variable");
    return series_subst(outer, {inner});
}

// Multiplicative inverse: the constant term must be a unit of the ring.
inline TruncSeries series_invert(const TruncSeries& a) {
    RingElem c = a.constant_term();
    if (!is_unit(c)) raise(ErrorCode::NotAUnit, "series_invert: constant term is not a unit");
    RingElem cinv = invert_unit(c);
    // a = c (1 + q), q with zero constant term; a^-1 = c^-1 sum (-q)^j.
    TruncSeries q = a.scaled(cinv) - TruncSeries::constant(a.ring(), a.vars(), a.order(),
                                                           RingElem::one(a.ring()));
    TruncSeries sum = TruncSeries::constant(a.ring(), a.vars(), a.order(), RingElem::one(a.ring()));
    TruncSeries p = -q;
    for (unsigned j = 1; j < a.order() && !p.is_zero(); ++j) {
        sum += p;
        p *= -q;
    }
    return sum.scaled(cinv);
}

// Compositional inverse of a normalized coordinate: f(0) = 0, f'(0) a unit.
inline TruncSeries series_revert(const TruncSeries& f) {
    if (f.vars().size() != 1)
        raise(ErrorCode::VariableMismatch, "series_revert: single-variable series required");
    if (!f.constant_term().is_zero())
        raise(ErrorCode::NotACoordinate, "series_revert: constant term must vanish");
    RingElem lin = f.coefficient_single(1);
    if (!is_unit(lin)) raise(ErrorCode::NotACoordinate, "series_revert: linear coefficient must be a unit");
    RingElem lininv = invert_unit(lin);
    unsigned N = f.order();
    TruncSeries g = TruncSeries::variable(f.ring(), f.vars(), N, f.vars()[0]).scaled(lininv);
    for (unsigned k = 2; k < N; ++k) {
        // f(g) = x + e_k x^k + O(x^{k+1}); cancel e_k degree by degree.
        TruncSeries fg = series_compose(f, g);
        RingElem err = fg.coefficient_single(k);
        if (err.is_zero()) continue;
        ExpVec e{k};
        g.set_term(std::move(e), g.coefficient_single(k) - lininv * err);
    }
    return g;
}

inline TruncSeries series_derivative(const TruncSeries& f, std::string_view var) {
    std::size_t idx = f.var_index(var);
    TruncSeries r = TruncSeries::zero(f.ring(), f.vars(), f.order() > 0 ? f.order() - 1 : 0);
    for (const auto& [e, c] : f.terms()) {
        if (e[idx] == 0) continue;
        ExpVec e2 = e;
        e2[idx] -= 1;
        r.set_term(std::move(e2), c.scaled(e[idx]));
    }
    return r;
}

// Order used for Laurent data that is known exactly (finite polynomials and
// finite nilpotent tails); large enough that min-order bookkeeping never
// clips a genuinely exact computation.
inline constexpr long kLaurentExact = 1L << 40;

// Single-variable series with finitely many negative exponents; exponents
// live in [lower, order).
class LaurentSeries {
public:
    LaurentSeries(RingPtr ring, std::string var, long lower, long order)
        : ring_(std::move(ring)), var_(std::move(var)), lower_(lower), order_(order) {
        if (order_ <= lower_) raise(ErrorCode::OrderTooLow, "laurent series window is empty");
        if (ring_->generator_index(var_) >= 0)
            raise(ErrorCode::VariableMismatch, "laurent variable collides with a ring generator");
    }

    static LaurentSeries zero(RingPtr ring, std::string var, long lower, long order) {
        return LaurentSeries(std::move(ring), std::move(var), lower, order);
    }

    static LaurentSeries monomial(RingPtr ring, std::string var, long k, const RingElem& c,
                                  long order) {
        LaurentSeries s(std::move(ring), std::move(var), k, order);
        s.set_term(k, c);
        return s;
    }

    static LaurentSeries from_series(const TruncSeries& t) {
        if (t.vars().size() != 1)
            raise(ErrorCode::VariableMismatch, "laurent conversion needs a single-variable series");
        LaurentSeries s(t.ring(), t.vars()[0], 0, static_cast<long>(t.order()));
        for (const auto& [e, c] : t.terms()) s.set_term(static_cast<long>(e[0]), c);
        return s;
    }

    // Fails if any negative exponent carries a nonzero coefficient.
    TruncSeries to_series() const {
        for (const auto& [k, c] : terms_)
            if (k < 0) raise(ErrorCode::InternalError, "laurent series has a genuine pole");
        TruncSeries t = TruncSeries::zero(ring_, {var_}, order_ <= 0 ? 0u : static_cast<unsigned>(order_));
        for (const auto& [k, c] : terms_) t.set_term(ExpVec{static_cast<unsigned>(k)}, c);
        return t;
    }

    const RingPtr& ring() const { return ring_; }
    const std::string& var() const { return var_; }
    long lower() const { return lower_; }
    long order() const { return order_; }
    const std::map<long, RingElem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    RingElem coefficient(long k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? RingElem::zero(ring_) : it->second;
    }

    void set_term(long k, const RingElem& c) {
        require_same_ring(ring_, c.ring(), "laurent term");
        if (k < lower_) lower_ = k;
        terms_.erase(k);
        if (k < order_ && !c.is_zero()) terms_.emplace(k, c);
    }

    LaurentSeries truncated(long order) const {
        LaurentSeries s(ring_, var_, lower_, std::min(order, order_));
        for (const auto& [k, c] : terms_) s.add_term(k, c);
        return s;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        a.require_compatible(b, "laurent add");
        LaurentSeries r(a.ring_, a.var_, std::min(a.lower_, b.lower_), std::min(a.order_, b.order_));
        for (const auto& [k, c] : a.terms_) r.add_term(k, c);
        for (const auto& [k, c] : b.terms_) r.add_term(k, c);
        return r;
    }

    friend LaurentSeries operator-(const LaurentSeries& a) {
        LaurentSeries r(a.ring_, a.var_, a.lower_, a.order_);
        for (const auto& [k, c] : a.terms_) r.add_term(k, -c);
        return r;
    }

    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        a.require_compatible(b, "laurent mul");
        // Unknown tails start at a.order and b.order, so the product is exact
        // strictly below min(a.order + b.lower, b.order + a.lower).
        LaurentSeries r(a.ring_, a.var_, a.lower_ + b.lower_,
                        std::min(a.order_ + b.lower_, b.order_ + a.lower_));
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
        return r;
    }

    LaurentSeries& operator+=(const LaurentSeries& b) { return *this = *this + b; }
    LaurentSeries& operator*=(const LaurentSeries& b) { return *this = *this * b; }

    LaurentSeries scaled(const RingElem& c) const {
        LaurentSeries r(ring_, var_, lower_, order_);
        for (const auto& [k, t] : terms_) r.add_term(k, t * c);
        return r;
    }

    LaurentSeries pow(unsigned k) const {
        if (k == 0) return monomial(ring_, var_, 0, RingElem::one(ring_), kLaurentExact);
        LaurentSeries acc = *this;
        for (unsigned i = 1; i < k; ++i) acc *= *this;
        return acc;
    }

    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        return same_ring(a.ring_, b.ring_) && a.var_ == b.var_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentSeries& a, const LaurentSeries& b) { return !(a == b); }

private:
    void require_compatible(const LaurentSeries& b, const char* where) const {
        require_same_ring(ring_, b.ring_, where);
        if (var_ != b.var_) raise(ErrorCode::VariableMismatch, std::string(where) + ": variables differ");
    }

    void add_term(long k, const RingElem& c) {
        if (k >= order_) return;
        if (k < lower_) lower_ = k;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        } else if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }

    RingPtr ring_;
    std::string var_;
    long lower_;
    long order_;
    std::map<long, RingElem> terms_;
};

inline LaurentSeries laurent_derivative(const LaurentSeries& f) {
    LaurentSeries r(f.ring(), f.var(), f.lower() - 1, f.order() - 1);
    for (const auto& [k, c] : f.terms())
        if (k != 0) r.set_term(k - 1, c.scaled(k));
    return r;
}

// Exact evaluation of a truncated series at nilpotent ring elements.  The
// truncation order must exceed the combined nilpotency budget so that every
// dropped monomial is provably zero.
inline RingElem series_eval(const TruncSeries& f, const std::vector<RingElem>& points) {
    if (points.size() != f.vars().size())
        raise(ErrorCode::VariableMismatch, "series_eval: one point per variable required");
    unsigned budget = 0;
    for (const auto& p : points) {
        require_same_ring(f.ring(), p.ring(), "series_eval");
        budget += detail::nilpotent_budget(p);
    }
    if (f.order() <= budget)
        raise(ErrorCode::OrderTooLow, "series_eval: truncation order does not dominate nilpotency");
    std::vector<std::vector<RingElem>> powers(points.size(), {RingElem::one(f.ring())});
    auto power = [&](std::size_t i, unsigned k) -> const RingElem& {
        while (powers[i].size() <= k) powers[i].push_back(powers[i].back() * points[i]);
        return powers[i][k];
    };
    RingElem acc = RingElem::zero(f.ring());
    for (const auto& [e, c] : f.terms()) {
        RingElem t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) t *= power(i, e[i]);
        acc += t;
    }
    return acc;
}

}  // namespace fgcalc

#endif
