// Acceptance suite: every criterion is exact (bit-exact equality of
// canonical forms); one pass/fail line is printed per criterion.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "fgcalc/cli.hpp"
#include "fgcalc/divisor.hpp"
#include "fgcalc/fgl.hpp"
#include "fgcalc/hopf_io.hpp"
#include "fgcalc/print.hpp"
#include "fgcalc/residue.hpp"
#include "fgcalc/weierstrass.hpp"

using namespace fgcalc;

namespace {

class CriterionReporter : public Catch::EventListenerBase {
public:
    using Catch::EventListenerBase::EventListenerBase;
    void testCaseEnded(const Catch::TestCaseStats& stats) override {
        std::printf("[%s] %s\n", stats.totals.assertions.allOk() ? "PASS" : "FAIL",
                    stats.testInfo->name.c_str());
        std::fflush(stdout);
    }
};
CATCH_REGISTER_LISTENER(CriterionReporter)

TruncSeries additive_series(const RingPtr& r, unsigned order) {
    std::vector<std::string> xy{"x", "y"};
    return TruncSeries::variable(r, xy, order, "x") + TruncSeries::variable(r, xy, order, "y");
}

TruncSeries multiplicative_series(const RingPtr& r, unsigned order) {
    std::vector<std::string> xy{"x", "y"};
    auto x = TruncSeries::variable(r, xy, order, "x");
    auto y = TruncSeries::variable(r, xy, order, "y");
    return x + y + x * y;
}

struct Pool {
    RingPtr ring;
    std::vector<RingElem> nil, units;
};

// Z/4, Z/8, F_3[e]/(e^3): every element is a unit or nilpotent.
std::vector<Pool> ring_pool() {
    auto z4 = RingDesc::integers_mod(4);
    auto z8 = RingDesc::integers_mod(8);
    auto f3e = RingDesc::integers_mod(3)->extended({"e", 0, 3});
    RingElem e = RingElem::generator(f3e, "e");
    auto c = [](const RingPtr& r, long v) { return RingElem::constant(r, mpq_class(v)); };
    std::vector<Pool> out;
    out.push_back({z4, {c(z4, 0), c(z4, 2)}, {c(z4, 1), c(z4, 3)}});
    out.push_back({z8,
                   {c(z8, 0), c(z8, 2), c(z8, 4), c(z8, 6)},
                   {c(z8, 1), c(z8, 3), c(z8, 5), c(z8, 7)}});
    out.push_back({f3e,
                   {RingElem::zero(f3e), e, e * e, e.scaled(2), (e * e).scaled(2), e + e * e},
                   {RingElem::one(f3e), c(f3e, 2), RingElem::one(f3e) + e, c(f3e, 2) + e * e}});
    return out;
}

TruncSeries random_weierstrass(std::mt19937_64& rng, const Pool& pool, unsigned order,
                               unsigned max_degree) {
    unsigned n = rng() % (max_degree + 1);
    TruncSeries s = TruncSeries::zero(pool.ring, {"x"}, order);
    for (unsigned k = 0; k < n; ++k) s.set_term(ExpVec{k}, pool.nil[rng() % pool.nil.size()]);
    s.set_term(ExpVec{n}, pool.units[rng() % pool.units.size()]);
    for (unsigned k = n + 1; k < order; ++k) {
        if (rng() % 2) continue;
        bool u = rng() % 2;
        s.set_term(ExpVec{k},
                   u ? pool.units[rng() % pool.units.size()] : pool.nil[rng() % pool.nil.size()]);
    }
    return s;
}

LaurentSeries random_invertible(std::mt19937_64& rng, const Pool& pool, long deg, long order) {
    LaurentSeries f = LaurentSeries::zero(pool.ring, "x", deg - 2, order);
    f.set_term(deg - 2, pool.nil[rng() % pool.nil.size()]);
    f.set_term(deg - 1, pool.nil[rng() % pool.nil.size()]);
    f.set_term(deg, pool.units[rng() % pool.units.size()]);
    for (long k = deg + 1; k < order; ++k) {
        if (rng() % 2) continue;
        bool u = rng() % 2;
        f.set_term(k,
                   u ? pool.units[rng() % pool.units.size()] : pool.nil[rng() % pool.nil.size()]);
    }
    return f;
}

std::string run_cli(const std::vector<std::string>& args, int* code = nullptr) {
    std::ostringstream out, err;
    int c = cli::run(args, out, err);
    if (code) *code = c;
    std::string s = out.str();
    while (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
}

}  // namespace

TEST_CASE("criterion 1: 3-series of the universal law matches the published expansion") {
    int code = 0;
    std::string out = run_cli({"fgl-nseries", "--universal", "--n", "3", "--order", "4"}, &code);
    REQUIRE(code == 0);
    REQUIRE(out == "3*x + 3*a11*x^2 + (a11^2 + 8*a12)*x^3");

    // v(F_univ) = a11^2 + 8 a12 as a ring element
    auto u = universal_fgl(4);
    RingElem a11 = RingElem::generator(u.ring, "a11");
    RingElem a12 = RingElem::generator(u.ring, "a12");
    REQUIRE(n_series(u.F, 3).coefficient_single(3) == a11 * a11 + a12.scaled(8));
}

TEST_CASE("criterion 2: universal relations are homogeneous for grade(a_kl) = 1-k-l") {
    for (unsigned N = 3; N <= 6; ++N) {
        auto u = universal_fgl(N);
        for (const auto& [e, c] : u.relations) {
            long grade = 0;
            REQUIRE(is_homogeneous(c, &grade));
            if (!c.is_zero()) {
                long expected = 1 - static_cast<long>(e[0]) - static_cast<long>(e[1]) -
                                static_cast<long>(e[2]);
                REQUIRE(grade == expected);
            }
        }
    }
    REQUIRE(!universal_fgl(6).relations.empty());
}

TEST_CASE("criterion 3: Weierstrass factorization round-trips on 200 random series") {
    std::mt19937_64 rng(2024);
    auto pools = ring_pool();
    for (int trial = 0; trial < 200; ++trial) {
        const Pool& pool = pools[trial % pools.size()];
        TruncSeries g = random_weierstrass(rng, pool, 8, 3);
        WeierstrassFactorization wf = weierstrass_factor(g);
        unsigned n = static_cast<unsigned>(wf.h.size() - 1);
        REQUIRE(wf.h[0] == RingElem::one(pool.ring));
        for (unsigned i = 1; i <= n; ++i) REQUIRE(is_nilpotent(wf.h[i]));
        REQUIRE(is_unit(wf.u.constant_term()));
        TruncSeries hs = detail::poly_as_series(wf.h, pool.ring, {"x"}, g.order());
        REQUIRE(hs * wf.u == g);
        WeierstrassFactorization again = weierstrass_factor(hs * wf.u);
        REQUIRE(again.h == wf.h);
        REQUIRE(again.u == wf.u);
    }
}

TEST_CASE("criterion 4: residue identities") {
    std::mt19937_64 rng(4096);
    auto pools = ring_pool();

    // the pinned instance rho(1/(x-a)) = 1
    {
        auto r = RingDesc::integers()->extended({"a", 0, 2});
        LaurentSeries denom = LaurentSeries::zero(r, "x", 0, 6);
        denom.set_term(0, -RingElem::generator(r, "a"));
        denom.set_term(1, RingElem::one(r));
        REQUIRE(residue(laurent_invert(denom)) == RingElem::one(r));
    }

    for (const auto& pool : pools) {
        for (int trial = 0; trial < 8; ++trial) {
            long deg = static_cast<long>(rng() % 5) - 2;
            LaurentSeries f = random_invertible(rng, pool, deg, 9);

            REQUIRE(residue(laurent_derivative(f)).is_zero());
            REQUIRE(residue(laurent_derivative(f) * laurent_invert(f)) ==
                    RingElem::constant(pool.ring, deg));
            for (long n = -4; n <= 4; ++n) {
                if (n == -1) continue;
                LaurentSeries w = laurent_pow(f, n) * laurent_derivative(f);
                if (w.order() <= -1) continue;
                REQUIRE(residue(w).is_zero());
            }
        }
        for (unsigned d = 1; d <= 3; ++d) {
            for (int trial = 0; trial < 4; ++trial) {
                TruncSeries g = TruncSeries::zero(pool.ring, {"x"}, 40);
                for (unsigned k = 0; k < d; ++k)
                    g.set_term(ExpVec{k}, pool.nil[rng() % pool.nil.size()]);
                g.set_term(ExpVec{d}, pool.units[rng() % pool.units.size()]);
                for (unsigned k = d + 1; k < 8; ++k)
                    if (rng() % 2)
                        g.set_term(ExpVec{k},
                                   RingElem::constant(pool.ring, static_cast<long>(rng() % 4)));
                LaurentSeries f = random_invertible(rng, pool, static_cast<long>(rng() % 3) - 2, 7);
                LaurentSeries pb =
                    laurent_compose(f, g) * LaurentSeries::from_series(series_derivative(g, "x"));
                REQUIRE(pb.order() > -1);
                REQUIRE(residue(pb) == RingElem::constant(pool.ring, d) * residue(f));
            }
        }
    }
}

TEST_CASE("criterion 5: the divisor semiring agrees with point-list expansion") {
    auto r = RingDesc::integers_mod(2)->extended({"e1", 0, 2})->extended({"e2", 0, 2});
    RingElem e1 = RingElem::generator(r, "e1"), e2 = RingElem::generator(r, "e2");
    std::vector<RingElem> nil;
    for (int c1 = 0; c1 < 2; ++c1)
        for (int c2 = 0; c2 < 2; ++c2)
            for (int c3 = 0; c3 < 2; ++c3)
                nil.push_back(e1.scaled(c1) + e2.scaled(c2) + (e1 * e2).scaled(c3));

    // all split divisors with <= 3 nilpotent roots
    std::vector<std::vector<RingElem>> multisets;
    multisets.push_back({});
    for (std::size_t i = 0; i < nil.size(); ++i) {
        multisets.push_back({nil[i]});
        for (std::size_t j = i; j < nil.size(); ++j) {
            multisets.push_back({nil[i], nil[j]});
            for (std::size_t k = j; k < nil.size(); ++k)
                multisets.push_back({nil[i], nil[j], nil[k]});
        }
    }
    REQUIRE(multisets.size() == 165);

    FGL Fa = fgl_validate(additive_series(r, 16), 16);
    FGL Fm = fgl_validate(multiplicative_series(r, 16), 16);

    for (const FGL* F : {&Fa, &Fm}) {
        // cache stars per distinct divisor pair
        std::map<std::string, Divisor> divisors;
        std::vector<std::string> keys(multisets.size());
        for (std::size_t i = 0; i < multisets.size(); ++i) {
            Divisor D = divisor_from_points(r, multisets[i]);
            keys[i] = print_poly(D.coefficients(), "t");
            divisors.emplace(keys[i], D);
        }
        std::map<std::pair<std::string, std::string>, Divisor> star_cache;
        for (auto& [ka, A] : divisors)
            for (auto& [kb, B] : divisors) {
                if (ka > kb) continue;
                star_cache.emplace(std::make_pair(ka, kb), divisor_star(*F, A, B));
            }

        // oracle agreement on every multiset pair, sum and star
        for (std::size_t i = 0; i < multisets.size(); ++i) {
            for (std::size_t j = i; j < multisets.size(); ++j) {
                std::vector<RingElem> sums;
                for (const auto& a : multisets[i])
                    for (const auto& b : multisets[j])
                        sums.push_back(series_eval(F->series(), {a, b}));
                Divisor star_oracle = divisor_from_points(r, sums);
                auto key = keys[i] <= keys[j] ? std::make_pair(keys[i], keys[j])
                                              : std::make_pair(keys[j], keys[i]);
                REQUIRE(star_cache.at(key) == star_oracle);

                std::vector<RingElem> concat = multisets[i];
                concat.insert(concat.end(), multisets[j].begin(), multisets[j].end());
                REQUIRE(divisor_sum(divisors.at(keys[i]), divisors.at(keys[j])) ==
                        divisor_from_points(r, concat));
            }
        }

        // [0] is the unit for the translation product
        Divisor origin = Divisor::origin(r);
        for (auto& [k, D] : divisors) REQUIRE(divisor_star(*F, origin, D) == D);

        // distributivity: exhaustive over distinct divisors of degree <= 2,
        // then randomized triples of degree <= 3
        std::vector<Divisor> small, all;
        for (auto& [k, D] : divisors) {
            all.push_back(D);
            if (D.degree() <= 2) small.push_back(D);
        }
        for (const auto& D : small)
            for (const auto& E : small)
                for (const auto& G : small)
                    REQUIRE(divisor_star(*F, D, divisor_sum(E, G)) ==
                            divisor_sum(divisor_star(*F, D, E), divisor_star(*F, D, G)));
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 100; ++trial) {
            const Divisor& D = all[rng() % all.size()];
            const Divisor& E = all[rng() % all.size()];
            const Divisor& G = all[rng() % all.size()];
            REQUIRE(divisor_star(*F, D, divisor_sum(E, G)) ==
                    divisor_sum(divisor_star(*F, D, E), divisor_star(*F, D, G)));
        }
    }
}

TEST_CASE("criterion 6: logarithms linearize and integrate the invariant differential") {
    std::mt19937_64 rng(6);
    auto Q = RingDesc::rationals();
    auto Qa = RingDesc::rationals()->extended({"a", -1, std::nullopt});

    std::vector<FGL> laws;
    laws.push_back(fgl_validate(additive_series(Q, 8), 8));
    laws.push_back(fgl_validate(multiplicative_series(Q, 8), 8));
    {
        TruncSeries Ha = additive_series(Qa, 8);
        Ha.set_term(ExpVec{1, 1}, RingElem::generator(Qa, "a"));
        laws.push_back(fgl_validate(Ha, 8));
    }
    {
        // a random FGL over Q at order 8: transport the additive law along a
        // random coordinate
        TruncSeries f = TruncSeries::variable(Q, {"x"}, 8, "x");
        for (unsigned k = 2; k < 8; ++k)
            f.set_term(ExpVec{k}, RingElem::constant(Q, static_cast<long>(rng() % 9) - 4));
        laws.push_back(fgl_conjugate(fgl_validate(additive_series(Q, 8), 8), f));
    }

    for (const FGL& F : laws) {
        TruncSeries lg = fgl_log(F);
        FGL Fadd = fgl_validate(additive_series(F.ring(), 8), 8);
        REQUIRE(hom_check(F, Fadd, lg));
        TruncSeries prod = series_derivative(lg, "x") * invariant_differential(F);
        REQUIRE(prod ==
                TruncSeries::constant(F.ring(), {"x"}, prod.order(), RingElem::one(F.ring())));
    }
}

TEST_CASE("criterion 7: heights of the standard laws, invariant under conjugation") {
    std::mt19937_64 rng(7);
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        auto fp = RingDesc::integers_mod(p);
        unsigned order = static_cast<unsigned>(p) + 3;
        FGL Fm = fgl_validate(multiplicative_series(fp, order), order);
        HeightResult h = height(Fm, p);
        REQUIRE_FALSE(h.infinite_up_to_order);
        REQUIRE(h.height == 1);
        REQUIRE(h.unit_flag);

        FGL Fa = fgl_validate(additive_series(fp, order), order);
        REQUIRE(height(Fa, p).infinite_up_to_order);

        for (int trial = 0; trial < 5; ++trial) {
            TruncSeries f = TruncSeries::variable(fp, {"x"}, order, "x");
            for (unsigned k = 2; k < order; ++k)
                f.set_term(ExpVec{k},
                           RingElem::constant(fp, static_cast<long>(rng() % p)));
            HeightResult hc = height(fgl_conjugate(Fm, f), p);
            REQUIRE_FALSE(hc.infinite_up_to_order);
            REQUIRE(hc.height == 1);
            REQUIRE(hc.unit_flag);
        }
    }
}

TEST_CASE("criterion 8: idempotent machinery and Cayley-Hamilton") {
    auto z12 = RingDesc::integers_mod(12);
    REQUIRE(lift_idempotent(RingElem::constant(z12, 3)) == RingElem::constant(z12, 9));

    auto z60 = RingDesc::integers_mod(60);
    auto parts = split_ring(z60);
    REQUIRE(parts.size() == 3);
    REQUIRE(parts[0].second->modulus() == 4);
    REQUIRE(parts[1].second->modulus() == 3);
    REQUIRE(parts[2].second->modulus() == 5);
    RingElem sum = RingElem::zero(z60);
    for (const auto& [e, comp] : parts) sum += e;
    REQUIRE(sum == RingElem::one(z60));
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = 0; j < parts.size(); ++j) {
            RingElem prod = parts[i].first * parts[j].first;
            if (i == j)
                REQUIRE(prod == parts[i].first);
            else
                REQUIRE(prod.is_zero());
        }

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        long n = 2 + static_cast<long>(rng() % 50);
        auto ring = RingDesc::integers_mod(n);
        SquareMatrix m(ring, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                m.set(i, j, RingElem::constant(ring, static_cast<long>(rng() % n)));
        auto p = charpoly(m);
        SquareMatrix acc(ring, 3);
        for (const auto& coeff : p) {
            SquareMatrix next(ring, 3);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) {
                    RingElem s = RingElem::zero(ring);
                    for (std::size_t l = 0; l < 3; ++l) s += acc.at(i, l) * m.at(l, j);
                    if (i == j) s += coeff;
                    next.set(i, j, s);
                }
            acc = next;
        }
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) REQUIRE(acc.at(i, j).is_zero());
    }
}

TEST_CASE("criterion 9: antipodes and Cartier duality on the bundled examples") {
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        auto fp = RingDesc::integers_mod(p);
        unsigned m = static_cast<unsigned>(p);
        FiniteHopf H = hopf_divided_power(fp, m);
        // hopf_antipode verifies mu (1 x chi) psi = eta eps before returning
        auto chi = hopf_antipode(H);
        for (unsigned i = 0; i < m; ++i)
            for (unsigned j = 0; j < m; ++j) {
                RingElem expected = RingElem::zero(fp);
                if (i == j) expected = RingElem::constant(fp, i % 2 == 0 ? 1 : -1);
                REQUIRE(chi[i * m + j] == expected);
            }
    }

    std::string dir = FGCALC_DATA_DIR;
    for (const char* name :
         {"group_algebra_z2.hopf", "group_algebra_z4.hopf", "divided_power_f2.hopf",
          "divided_power_f3.hopf", "divided_power_f5.hopf"}) {
        std::ifstream in(dir + "/hopf/" + name);
        REQUIRE(in.good());
        std::stringstream ss;
        ss << in.rdbuf();
        FiniteHopf H = parse_hopf(ss.str());
        REQUIRE(hopf_check(H).empty());
        FiniteHopf D = cartier_dual(H);
        REQUIRE(hopf_check(D).empty());
        REQUIRE(cartier_dual(D) == H);
    }
}

TEST_CASE("criterion 10: Landweber sequences of the standard laws") {
    auto Z = RingDesc::integers();
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        unsigned order = static_cast<unsigned>(p) + 2;
        FGL Fm = fgl_validate(multiplicative_series(Z, order), order);
        LandweberResult res = landweber_sequence(Fm, p, 1);
        REQUIRE(res.entries.size() == 2);
        REQUIRE(res.entries[0].u == RingElem::constant(Z, static_cast<long>(p)));
        REQUIRE(res.entries[0].flag == Regularity::Regular);
        REQUIRE(res.entries[1].u == RingElem::one(RingDesc::integers_mod(p)));
        REQUIRE(is_unit(res.entries[1].u));
        REQUIRE(res.entries[1].flag == Regularity::Regular);

        FGL Fa = fgl_validate(additive_series(Z, order), order);
        LandweberResult res2 = landweber_sequence(Fa, p, 1);
        REQUIRE(res2.entries[1].u.is_zero());
        REQUIRE(res2.entries[1].flag == Regularity::NotRegular);
    }
}
