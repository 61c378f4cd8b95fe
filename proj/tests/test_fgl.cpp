#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <thread>

#include "fgcalc/fgl.hpp"
#include "fgcalc/print.hpp"

using namespace fgcalc;

namespace {

RingPtr Q = RingDesc::rationals();
RingPtr Z = RingDesc::integers();

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

// A random rational coordinate x + c2 x^2 + ...
TruncSeries random_coordinate(std::mt19937_64& rng, const RingPtr& r, unsigned order, long span) {
    TruncSeries f = TruncSeries::variable(r, {"x"}, order, "x");
    for (unsigned k = 2; k < order; ++k) {
        long num = static_cast<long>(rng() % (2 * span + 1)) - span;
        f.set_term(ExpVec{k}, RingElem::constant(r, num));
    }
    return f;
}

}  // namespace

TEST_CASE("fgl_validate accepts the standard laws") {
    CHECK_NOTHROW(fgl_validate(additive_series(Z, 6), 6));
    CHECK_NOTHROW(fgl_validate(multiplicative_series(Z, 6), 6));

    // H_a over Z[a]
    auto ra = RingDesc::integers()->extended({"a", -1, std::nullopt});
    auto F = multiplicative_series(ra, 5);
    F.set_term(ExpVec{1, 1}, RingElem::generator(ra, "a"));
    CHECK_NOTHROW(fgl_validate(F, 5));
}

TEST_CASE("fgl_validate reports the first failing axiom") {
    auto bad = additive_series(Z, 5);
    bad.set_term(ExpVec{2, 0}, RingElem::one(Z));  // x + y + x^2
    try {
        fgl_validate(bad, 5);
        FAIL("expected AxiomViolation");
    } catch (const AxiomViolationError& e) {
        CHECK(e.axiom().find("unit") != std::string::npos);
        CHECK(e.exponent() == ExpVec{2, 0});
    }

    auto asym = additive_series(Z, 5);
    asym.set_term(ExpVec{2, 1}, RingElem::one(Z));  // breaks commutativity
    try {
        fgl_validate(asym, 5);
        FAIL("expected AxiomViolation");
    } catch (const AxiomViolationError& e) {
        CHECK(e.axiom().find("commutativity") != std::string::npos);
    }

    // Symmetric and unital but not associative.
    auto nonassoc = additive_series(Z, 8);
    nonassoc.set_term(ExpVec{2, 2}, RingElem::one(Z));
    try {
        fgl_validate(nonassoc, 8);
        FAIL("expected AxiomViolation");
    } catch (const AxiomViolationError& e) {
        CHECK(e.axiom().find("associativity") != std::string::npos);
    }
}

TEST_CASE("universal FGL at small orders") {
    auto u3 = universal_fgl(3);
    REQUIRE(u3.ring->generators().size() == 1);
    CHECK(u3.ring->generators()[0].name == "a11");
    CHECK(u3.ring->generators()[0].grade == -1);
    for (const auto& [e, c] : u3.relations) CHECK(c.is_zero());

    auto u4 = universal_fgl(4);
    REQUIRE(u4.ring->generators().size() == 2);
    CHECK(u4.ring->generators()[1].name == "a12");
    CHECK(u4.ring->generators()[1].grade == -2);
    // The associator vanishes identically below total degree 4.
    CHECK(u4.relations.empty());

    // The first genuine relation shows up at order 5.
    auto u5 = universal_fgl(5);
    REQUIRE(u5.relations.size() == 2);
    RingElem a11 = RingElem::generator(u5.ring, "a11");
    RingElem a12 = RingElem::generator(u5.ring, "a12");
    RingElem a13 = RingElem::generator(u5.ring, "a13");
    RingElem a22 = RingElem::generator(u5.ring, "a22");
    RingElem expected = (a11 * a12).scaled(2) + a13.scaled(3) - a22.scaled(2);
    CHECK((u5.relations[0].second == expected || u5.relations[0].second == -expected));
}

TEST_CASE("universal FGL relations are homogeneous and symmetric in x,y") {
    for (unsigned N = 3; N <= 6; ++N) {
        auto u = universal_fgl(N);
        for (const auto& [e, c] : u.relations) {
            long grade = 0;
            CHECK(is_homogeneous(c, &grade));
            if (!c.is_zero()) {
                long expected = 1;
                for (auto v : e) expected -= static_cast<long>(v);
                CHECK(grade == expected);
            }
        }
        // The construction is stable under swapping the roles of x and y.
        auto swapped = series_subst(u.F, {TruncSeries::variable(u.ring, {"x", "y"}, N, "y"),
                                          TruncSeries::variable(u.ring, {"x", "y"}, N, "x")});
        CHECK(swapped == u.F);
    }
}

TEST_CASE("universal relation extraction is cancellable") {
    CancelToken token;
    token.cancelled = true;
    CHECK_THROWS_AS(universal_fgl(5, &token), Error);
}

TEST_CASE("values are safe to share across threads") {
    auto F = fgl_validate(multiplicative_series(Q, 7), 7);  // shared, read-only
    std::vector<TruncSeries> results(4, TruncSeries::zero(Q, {"x"}, 7));
    std::vector<std::thread> workers;
    for (int t = 0; t < 4; ++t)
        workers.emplace_back([&, t] { results[static_cast<std::size_t>(t)] = n_series(F, t + 2); });
    for (auto& w : workers) w.join();
    for (int t = 0; t < 4; ++t) CHECK(results[static_cast<std::size_t>(t)] == n_series(F, t + 2));
}

TEST_CASE("the 3-series of the universal law") {
    auto u = universal_fgl(4);
    auto three = n_series(u.F, 3);
    CHECK(print_series(three) == "3*x + 3*a11*x^2 + (a11^2 + 8*a12)*x^3");
    RingElem v = three.coefficient_single(3);
    RingElem a11 = RingElem::generator(u.ring, "a11");
    RingElem a12 = RingElem::generator(u.ring, "a12");
    CHECK(v == a11 * a11 + a12.scaled(8));

    // the coefficients sit in grades 0, -1, -2
    long g = 99;
    CHECK((is_homogeneous(three.coefficient_single(1), &g) && g == 0));
    g = 99;
    CHECK((is_homogeneous(three.coefficient_single(2), &g) && g == -1));
    g = 99;
    CHECK((is_homogeneous(three.coefficient_single(3), &g) && g == -2));
}

TEST_CASE("n-series basics") {
    auto F = fgl_validate(multiplicative_series(Z, 4), 4);
    CHECK(print_series(n_series(F, 1)) == "x");
    CHECK(print_series(n_series(F, 2)) == "2*x + x^2");
    CHECK(print_series(n_series(F, -1)) == "-x + x^2 - x^3");
    CHECK(n_series(F, 0).is_zero());

    // iota is an involution
    auto inv = formal_inverse(F.series());
    CHECK(series_compose(inv, inv) == TruncSeries::variable(Z, {"x"}, 4, "x"));
}

TEST_CASE("[m+n](x) = F([m](x), [n](x))") {
    auto Fq = fgl_validate(multiplicative_series(Q, 6), 6);
    for (long m = -4; m <= 4; ++m)
        for (long n = -4; n <= 4; ++n) {
            auto lhs = n_series(Fq, m + n);
            auto rhs = series_subst(Fq.series(), {n_series(Fq, m), n_series(Fq, n)});
            CHECK(lhs == rhs);
        }
}

TEST_CASE("conjugation basics") {
    auto F = fgl_validate(additive_series(Q, 5), 5);
    auto f = TruncSeries::variable(Q, {"x"}, 5, "x").scaled(RingElem::constant(Q, 2));
    CHECK(fgl_conjugate(F, f).series() == F.series());

    auto id = TruncSeries::variable(Q, {"x"}, 5, "x");
    auto Fm = fgl_validate(multiplicative_series(Q, 5), 5);
    CHECK(fgl_conjugate(Fm, id).series() == Fm.series());

    // f = c x sends H_1 to H_{1/c}.
    auto conj2 = fgl_conjugate(Fm, f);
    CHECK(conj2.series().coefficient(ExpVec{1, 1}) == RingElem::constant(Q, mpq_class(1, 2)));

    CHECK_THROWS_AS(
        fgl_conjugate(Fm, TruncSeries::variable(Q, {"x"}, 5, "x").pow(2).assume_order(5)), Error);
}

TEST_CASE("conjugation is an action: F_{f o g} = (F_g)_f") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 6; ++trial) {
        auto F = fgl_validate(multiplicative_series(Q, 6), 6);
        auto f = random_coordinate(rng, Q, 6, 4);
        auto g = random_coordinate(rng, Q, 6, 4);
        auto lhs = fgl_conjugate(F, series_compose(f, g));
        auto rhs = fgl_conjugate(fgl_conjugate(F, g), f);
        CHECK(lhs.series() == rhs.series());
    }
}

TEST_CASE("hom_check") {
    auto F = fgl_validate(additive_series(Z, 5), 5);
    auto phi = TruncSeries::variable(Z, {"x"}, 5, "x");
    CHECK(hom_check(F, F, phi));

    // over F_2[a]/(a^2): a x is a homomorphism from additive to multiplicative
    auto r = RingDesc::integers_mod(2)->extended({"a", 0, 2});
    auto Fa = fgl_validate(additive_series(r, 5), 5);
    auto Fm = fgl_validate(multiplicative_series(r, 5), 5);
    auto ax = TruncSeries::variable(r, {"x"}, 5, "x").scaled(RingElem::generator(r, "a"));
    CHECK(hom_check(Fa, Fm, ax));

    auto sq = TruncSeries::variable(Z, {"x"}, 5, "x").pow(2).assume_order(5);
    CHECK_FALSE(hom_check(F, F, sq));
}

TEST_CASE("truncated exponentials with divided powers are homomorphisms to the multiplicative law") {
    // over F_p[a]/(a^p), T(a)(x) = sum_{j<p} a^j x^j / j! satisfies
    // T(x+y) = T(x) T(y); as a group-law homomorphism: phi = T(a) - 1.
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        auto r = RingDesc::integers_mod(p)->extended({"a", 0, static_cast<unsigned>(p)});
        RingElem a = RingElem::generator(r, "a");
        unsigned N = static_cast<unsigned>(p) + 2;
        auto Fa = fgl_validate(additive_series(r, N), N);
        auto Fm = fgl_validate(multiplicative_series(r, N), N);
        TruncSeries phi = TruncSeries::zero(r, {"x"}, N);
        mpz_class fact = 1;
        for (unsigned j = 1; j < p; ++j) {
            fact *= j;
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), fact.get_mpz_t(), mpz_class(p).get_mpz_t());
            phi.set_term(ExpVec{j}, a.pow(j).scaled(mpq_class(inv)));
        }
        CHECK(hom_check(Fa, Fm, phi));
    }
}

TEST_CASE("additive decomposition over F_p") {
    auto f2 = RingDesc::integers_mod(2);
    auto f = TruncSeries::variable(f2, {"x"}, 5, "x") +
             TruncSeries::variable(f2, {"x"}, 5, "x").pow(2).assume_order(5);
    auto coeffs = additive_decompose(f, 2);
    REQUIRE(coeffs.size() == 2);
    CHECK(coeffs[0] == RingElem::one(f2));
    CHECK(coeffs[1] == RingElem::one(f2));

    auto f3 = RingDesc::integers_mod(3);
    auto sq = TruncSeries::variable(f3, {"x"}, 5, "x").pow(2).assume_order(5);
    try {
        additive_decompose(sq, 3);
        FAIL("expected NotAdditive");
    } catch (const NotAdditiveError& e) {
        CHECK(e.witness() == ExpVec{1, 1});
    }

    CHECK(additive_decompose(TruncSeries::zero(f2, {"x"}, 5), 2).empty());
    CHECK_THROWS_AS(additive_decompose(f, 3), Error);  // wrong characteristic
}

TEST_CASE("invariant differential") {
    auto Fa = fgl_validate(additive_series(Z, 5), 5);
    CHECK(print_series(invariant_differential(Fa)) == "1");

    auto Fm = fgl_validate(multiplicative_series(Z, 5), 5);
    CHECK(print_series(invariant_differential(Fm)) == "1 + x");

    auto u = universal_fgl(4);
    CHECK(print_series(invariant_differential(u.F)) == "1 + a11*x + a12*x^2");
}

TEST_CASE("logarithms over Q") {
    auto Fa = fgl_validate(additive_series(Q, 6), 6);
    CHECK(print_series(fgl_log(Fa)) == "x");

    auto Fm = fgl_validate(multiplicative_series(Q, 4), 4);
    CHECK(print_series(fgl_log(Fm)) == "x - 1/2*x^2 + 1/3*x^3");

    auto ra = RingDesc::rationals()->extended({"a", -1, std::nullopt});
    auto Fha_series = additive_series(ra, 4);
    Fha_series.set_term(ExpVec{1, 1}, RingElem::generator(ra, "a"));
    auto Fha = fgl_validate(Fha_series, 4);
    RingElem a = RingElem::generator(ra, "a");
    auto lg = fgl_log(Fha);
    CHECK(lg.coefficient_single(2) == a.scaled(mpq_class(-1, 2)));
    CHECK(lg.coefficient_single(3) == (a * a).scaled(mpq_class(1, 3)));

    CHECK_THROWS_AS(fgl_log(fgl_validate(multiplicative_series(Z, 4), 4)), Error);
}

TEST_CASE("log linearizes and log' H = 1") {
    std::mt19937_64 rng(101);
    std::vector<FGL> laws;
    laws.push_back(fgl_validate(additive_series(Q, 8), 8));
    laws.push_back(fgl_validate(multiplicative_series(Q, 8), 8));
    for (int trial = 0; trial < 3; ++trial) {
        auto f = random_coordinate(rng, Q, 8, 3);
        laws.push_back(fgl_conjugate(fgl_validate(additive_series(Q, 8), 8), f));
    }
    auto Fadd = fgl_validate(additive_series(Q, 8), 8);
    for (const auto& F : laws) {
        auto lg = fgl_log(F);
        CHECK(hom_check(F, Fadd, lg));
        auto prod = series_derivative(lg, "x") * invariant_differential(F);
        CHECK(prod == TruncSeries::constant(Q, {"x"}, prod.order(), RingElem::one(Q)));
    }
}

TEST_CASE("frobenius decomposition") {
    auto f2 = RingDesc::integers_mod(2);
    auto x2 = TruncSeries::variable(f2, {"x"}, 6, "x").pow(2);
    CHECK(print_series(frobenius_decompose(x2, 2)) == "x");

    auto ra = RingDesc::integers_mod(2)->extended({"a", 0, std::nullopt});
    auto f = TruncSeries::variable(ra, {"x"}, 6, "x").pow(2).scaled(RingElem::generator(ra, "a")) +
             TruncSeries::variable(ra, {"x"}, 6, "x").pow(4);
    CHECK(print_series(frobenius_decompose(f, 2)) == "a*x + x^2");

    CHECK_THROWS_AS(frobenius_decompose(TruncSeries::variable(f2, {"x"}, 6, "x"), 2), Error);
}

TEST_CASE("height of the standard laws") {
    auto f2 = RingDesc::integers_mod(2);
    auto Fm = fgl_validate(multiplicative_series(f2, 8), 8);
    auto h = height(Fm, 2);
    CHECK_FALSE(h.infinite_up_to_order);
    CHECK(h.height == 1);
    CHECK(h.unit_flag);

    auto Fa = fgl_validate(additive_series(f2, 8), 8);
    CHECK(height(Fa, 2).infinite_up_to_order);

    auto f3 = RingDesc::integers_mod(3);
    auto Fm3 = fgl_validate(multiplicative_series(f3, 27), 27);
    auto h3 = height(Fm3, 3);
    CHECK(h3.height == 1);
    CHECK(h3.unit_flag);
}

TEST_CASE("height is invariant under conjugation") {
    std::mt19937_64 rng(55);
    auto f3 = RingDesc::integers_mod(3);
    auto Fm = fgl_validate(multiplicative_series(f3, 12), 12);
    for (int trial = 0; trial < 5; ++trial) {
        TruncSeries f = TruncSeries::variable(f3, {"x"}, 12, "x");
        for (unsigned k = 2; k < 12; ++k)
            f.set_term(ExpVec{k}, RingElem::constant(f3, static_cast<long>(rng() % 3)));
        auto h = height(fgl_conjugate(Fm, f), 3);
        CHECK(h.height == 1);
        CHECK(h.unit_flag);
    }
}

TEST_CASE("landweber sequence") {
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        unsigned ord = static_cast<unsigned>(p) + 2;
        auto Fm = fgl_validate(multiplicative_series(Z, ord), ord);
        auto res = landweber_sequence(Fm, p, 1);
        REQUIRE(res.entries.size() == 2);
        CHECK(res.entries[0].u == RingElem::constant(Z, static_cast<long>(p)));
        CHECK(res.entries[0].flag == Regularity::Regular);
        auto fp = RingDesc::integers_mod(p);
        CHECK(res.entries[1].u == RingElem::one(fp));
        CHECK(res.entries[1].flag == Regularity::Regular);

        auto Fa = fgl_validate(additive_series(Z, ord), ord);
        auto res2 = landweber_sequence(Fa, p, 1);
        REQUIRE(res2.entries.size() == 2);
        CHECK(res2.entries[1].u.is_zero());
        CHECK(res2.entries[1].flag == Regularity::NotRegular);
    }

    // nmax = 0 keeps just u_0 = p.
    auto Fm2 = fgl_validate(multiplicative_series(Z, 4), 4);
    CHECK(landweber_sequence(Fm2, 2, 0).entries.size() == 1);

    // After a unit u_1 the quotient collapses.
    auto res_long = landweber_sequence(fgl_validate(multiplicative_series(Z, 9), 9), 2, 3);
    CHECK(res_long.quotient_collapsed);
}

TEST_CASE("landweber sequence of H_a over Z[a]") {
    // [p](x) = a^{p-1} x^p mod (p, higher): u_1 = a^{p-1}, a regular element
    // of the domain F_p[a]; the next quotient is not representable.
    auto ra = RingDesc::integers()->extended({"a", -1, std::nullopt});
    auto F = multiplicative_series(ra, 5);
    F.set_term(ExpVec{1, 1}, RingElem::generator(ra, "a"));
    auto Fa = fgl_validate(F, 5);

    auto res = landweber_sequence(Fa, 3, 1);
    REQUIRE(res.entries.size() == 2);
    auto f3a = RingDesc::make(BaseRing::IntegersMod, 3, {{"a", -1, std::nullopt}});
    RingElem a3 = RingElem::generator(f3a, "a");
    CHECK(res.entries[1].u == a3 * a3);
    CHECK(res.entries[1].flag == Regularity::Regular);

    CHECK_THROWS_AS(landweber_sequence(Fa, 3, 2), Error);  // quotient by a^2 unsupported
}
