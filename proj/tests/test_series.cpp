#include <doctest.h>

#include "moore/series.hpp"
#include "support.hpp"

using namespace moore;
using moore::testing::random_automorphism;
using moore::testing::random_series;

namespace {

PowerSeries poly(const Ring& r, int trunc, std::vector<mpq_class> c) {
    PowerSeries s(r, trunc);
    for (std::size_t i = 0; i < c.size(); ++i) s.set_coeff(static_cast<int>(i), r.from_rational(c[i]));
    return s;
}

}  // namespace

TEST_CASE("series arithmetic") {
    Ring q = Ring::rationals();
    PowerSeries t = PowerSeries::identity(q, 6);
    CHECK(t + poly(q, 6, {0, 0, 1}) == poly(q, 6, {0, 1, 1}));
    CHECK((t * t).agrees_with(poly(q, 6, {0, 0, 1})));

    Ring z = Ring::truncated_padic(5, 6);
    PowerSeries a = poly(z, 6, {0, 5, 1});
    CHECK((a * PowerSeries::identity(z, 6)).agrees_with(poly(z, 6, {0, 0, 5, 1})));
}

TEST_CASE("product truncation bookkeeping") {
    Ring q = Ring::rationals();
    PowerSeries a = poly(q, 4, {0, 1, 1});
    PowerSeries b = poly(q, 8, {0, 0, 1});
    // a known to 4 with ord b = 2 -> product exact to 6; b known to 8 with ord a = 1 -> 9
    CHECK((a * b).trunc() == 6);
}

TEST_CASE("compose examples") {
    Ring q = Ring::rationals();
    CHECK(compose(poly(q, 4, {0, 0, 1}), poly(q, 4, {0, 2})) == poly(q, 4, {0, 0, 4}));
    // (t - t^2/2)^2 + (t - t^2/2)^3 expanded by hand
    PowerSeries got = compose(poly(q, 4, {0, 0, 1, 1}), poly(q, 4, {0, 1, mpq_class(-1, 2)}));
    CHECK(got == poly(q, 4, {0, 0, 1, 0, mpq_class(-5, 4)}));
    PowerSeries u = poly(q, 5, {0, 3, -1, 7, 2, 1});
    CHECK(compose(u, PowerSeries::identity(q, 5)) == u);
    CHECK_THROWS_AS(compose(u, poly(q, 5, {1, 1})), Error);
}

TEST_CASE("reversion examples") {
    Ring q = Ring::rationals();
    CHECK(reversion(PowerSeries::identity(q, 5)) == PowerSeries::identity(q, 5));
    CHECK(reversion(poly(q, 5, {0, 2})) == poly(q, 5, {0, mpq_class(1, 2)}));
    // signed Catalan numbers
    CHECK(reversion(poly(q, 4, {0, 1, 1})) == poly(q, 4, {0, 1, -1, 2, -5}));
    Ring z = Ring::truncated_padic(5, 3);
    CHECK_THROWS_AS(reversion(poly(z, 4, {0, 5, 1})), Error);
}

TEST_CASE("derivative and height examples") {
    Ring zv = Ring::truncated_padic(5, 6, true);
    PowerSeries u(zv, 4);
    u.set_coeff(1, zv.from_int(5));
    u.set_coeff(2, zv.v_power(1));
    PowerSeries du = derivative(u);
    CHECK(du.trunc() == 3);
    CHECK(du.coeff(0) == zv.from_int(5));
    CHECK(du.coeff(1) == zv.from_int(2) * zv.v_power(1));

    Ring f5 = Ring::prime_field(5);
    CHECK(derivative(PowerSeries::monomial(f5, 6, f5.one(), 5)).is_zero());

    Ring q = Ring::rationals();
    CHECK(height(poly(q, 4, {0, 5, 1})) == 1);
    CHECK(height(PowerSeries::monomial(zv, 5, zv.v_power(1), 3)) == 3);
    Ring z = Ring::truncated_padic(5, 6);
    CHECK(height(reduce_mod_pi(poly(z, 4, {0, 5, 1}))) == 2);
    CHECK_THROWS_AS(height(PowerSeries(q, 4)), Error);
}

TEST_CASE("trivial and canonical predicates") {
    Ring z = Ring::truncated_padic(5, 6);
    CHECK(is_trivial(poly(z, 6, {0, 5})));
    CHECK(canonical_degree(poly(z, 6, {0, 5, 1})) == 2);
    CHECK_FALSE(canonical_degree(poly(z, 6, {0, 5, 1, 1})).has_value());
    CHECK_FALSE(is_trivial(poly(z, 6, {0, 5, 1})));
    CHECK(canonical_degree(poly(z, 6, {0, 5, 10, 3})) == 3);
    CHECK_THROWS_AS(is_trivial(poly(Ring::rationals(), 3, {0, 5})), Error);
}

TEST_CASE("weierstrass rank examples") {
    Ring zv = Ring::truncated_padic(5, 6, true);
    PowerSeries f(zv, 8);
    f.set_coeff(0, zv.from_int(5));
    f.set_coeff(1, zv.from_int(2) * zv.v_power(1));
    CHECK(weierstrass_rank(f) == 1);
    CHECK(weierstrass_rank(PowerSeries::monomial(zv, 8, zv.one(), 0)) == 0);

    for (int n : {2, 3, 4, 6, 7}) {
        PowerSeries g(zv, 12);
        g.set_coeff(0, zv.from_int(5));
        g.set_coeff(n - 1, zv.from_int(n) * zv.v_power(n));
        CHECK(weierstrass_rank(g) == n - 1);
    }
    CHECK_THROWS_AS(weierstrass_rank(PowerSeries::monomial(zv, 8, zv.from_int(5), 2)), Error);
}

TEST_CASE("weierstrass factor against hand division") {
    // 5 + 3 v^3 t^2 = 3 v^3 (t^2 + 5 (3 v^3)^{-1}) exactly
    Ring zv = Ring::truncated_padic(5, 6, true);
    PowerSeries f(zv, 12);
    f.set_coeff(0, zv.from_int(5));
    f.set_coeff(2, zv.from_int(3) * zv.v_power(3));
    DistinguishedFactor d = weierstrass_factor(f);
    CHECK(d.precision == 6);
    CHECK(d.polynomial.coeff(2) == zv.one());
    CHECK(d.polynomial.coeff(1) == zv.zero());
    CHECK(d.polynomial.coeff(0) == zv.from_int(5) * inverse(zv.from_int(3) * zv.v_power(3)));

    // f = 5 + t + t^2: the root alpha of P = t - alpha satisfies f(alpha) = 0 mod 5^prec
    Ring z = Ring::truncated_padic(5, 6);
    PowerSeries g = poly(z, 12, {5, 1, 1});
    DistinguishedFactor e = weierstrass_factor(g);
    REQUIRE(e.polynomial.trunc() == 1);
    RingElem alpha = -e.polynomial.coeff(0);
    RingElem value = z.from_int(5) + alpha + alpha * alpha;
    CHECK(valuation(value) >= e.precision);
    CHECK(e.precision == 6);
}

TEST_CASE("property: composition is associative") {
    std::mt19937_64 rng(101);
    for (Ring r : {Ring::rationals(), Ring::prime_field(7), Ring::truncated_padic(5, 4)}) {
        for (int trial = 0; trial < 15; ++trial) {
            PowerSeries u = random_series(r, 8, rng);
            PowerSeries f = random_series(r, 8, rng);
            PowerSeries g = random_series(r, 8, rng);
            PowerSeries lhs = compose(compose(u, f), g);
            PowerSeries rhs = compose(u, compose(f, g));
            CHECK(lhs.agrees_with(rhs));
        }
    }
}

TEST_CASE("property: reversion is a two-sided inverse and an involution") {
    std::mt19937_64 rng(202);
    for (Ring r : {Ring::rationals(), Ring::prime_field(7), Ring::truncated_padic(5, 4, true)}) {
        for (int trial = 0; trial < 15; ++trial) {
            PowerSeries f = random_automorphism(r, 10, rng);
            PowerSeries g = reversion(f);
            PowerSeries t = PowerSeries::identity(r, 10);
            CHECK(compose(f, g) == t);
            CHECK(compose(g, f) == t);
            CHECK(reversion(g) == f);
        }
    }
}

TEST_CASE("property: derivative is linear and Leibniz") {
    std::mt19937_64 rng(303);
    Ring r = Ring::rationals();
    for (int trial = 0; trial < 20; ++trial) {
        PowerSeries a = random_series(r, 9, rng, 0);
        PowerSeries b = random_series(r, 9, rng, 0);
        CHECK(derivative(a + b) == derivative(a) + derivative(b));
        CHECK(derivative(a * b).agrees_with(derivative(a) * b + a * derivative(b)));
    }
}

TEST_CASE("property: height is an orbit invariant") {
    std::mt19937_64 rng(404);
    for (Ring r : {Ring::rationals(), Ring::prime_field(7)}) {
        for (int trial = 0; trial < 20; ++trial) {
            PowerSeries u = random_series(r, 10, rng, 1 + trial % 4);
            PowerSeries f = random_automorphism(r, 10, rng);
            CHECK(height(compose(u, f)) == height(u));
        }
    }
}

TEST_CASE("series printing") {
    Ring zv = Ring::truncated_padic(5, 6, true);
    PowerSeries u(zv, 6);
    u.set_coeff(1, zv.from_int(5));
    u.set_coeff(2, zv.v_power(1));
    u.set_coeff(4, zv.from_int(3));
    CHECK(u.str() == "5*t + v*t^2 + 3*t^4");
    Ring q = Ring::rationals();
    CHECK(poly(q, 4, {0, 0, 1, 0, mpq_class(-5, 4)}).str() == "t^2 - 5/4*t^4");
}
