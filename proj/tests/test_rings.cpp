#include <doctest.h>

#include <random>

#include "moore/rings.hpp"

using namespace moore;

namespace {

RingElem random_elem(const Ring& r, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> coeff(-40, 40);
    std::uniform_int_distribution<int> vexp(-2, 2);
    RingElem x = r.zero();
    for (int i = 0; i < 3; ++i) {
        RingElem c = r.from_int(coeff(rng));
        if (r.laurent()) c *= r.v_power(vexp(rng));
        x += c;
    }
    return x;
}

}  // namespace

TEST_CASE("ring arithmetic examples") {
    Ring q = Ring::rationals();
    CHECK(q.from_rational(mpq_class(2, 3)) + q.from_rational(mpq_class(1, 3)) == q.one());

    Ring f5v = Ring::prime_field(5, true);
    RingElem a = f5v.from_int(3) * f5v.v_power(-1);
    RingElem b = f5v.from_int(2) * f5v.v_power(2);
    CHECK(a * b == f5v.v_power(1));
    CHECK((a * b).degree() == 2);

    Ring z = Ring::truncated_padic(5, 3);
    CHECK(z.from_int(25) + z.from_int(625) == z.from_int(25));
}

TEST_CASE("units and inverses") {
    Ring z = Ring::truncated_padic(5, 3);
    CHECK_FALSE(is_unit(z.from_int(5)));
    CHECK_THROWS_AS(inverse(z.from_int(5)), Error);
    CHECK(inverse(z.from_int(2)) == z.from_int(63));
    CHECK(mod_inverse(2, 125) == 63);

    Ring f5v = Ring::prime_field(5, true);
    CHECK(is_unit(f5v.v_power(1)));
    CHECK(inverse(f5v.v_power(1)) == f5v.v_power(-1));
    CHECK_FALSE(is_unit(f5v.one() + f5v.v_power(1)));

    // 1 + 5v is a unit in Z/5^3[v, v^-1]: the 5v part is nilpotent
    Ring zv = Ring::truncated_padic(5, 3, true);
    RingElem u = zv.one() + zv.from_int(5) * zv.v_power(1);
    CHECK(is_unit(u));
    CHECK(u * inverse(u) == zv.one());
}

TEST_CASE("valuation") {
    Ring z = Ring::truncated_padic(5, 6);
    CHECK(valuation(z.from_int(50)) == 2);
    CHECK(valuation(z.from_int(3)) == 0);
    CHECK(valuation(z.zero()) == 6);
    CHECK_THROWS_AS(valuation(Ring::rationals().one()), Error);
    CHECK(divide_by_uniformizer(z.from_int(50)) == z.from_int(10));
}

TEST_CASE("mixed rings are rejected") {
    Ring q = Ring::rationals();
    Ring f = Ring::prime_field(7);
    CHECK_THROWS_AS(q.one() + f.one(), Error);
    CHECK(RingElem() + f.one() == f.one());
}

TEST_CASE("ring spec parsing and printing") {
    CHECK(Ring::parse("Zp:5:6[v]") == Ring::truncated_padic(5, 6, true));
    CHECK(Ring::parse("F7") == Ring::prime_field(7));
    CHECK(Ring::parse("Q[v]").spec() == "Q[v]");
    CHECK_THROWS_AS(Ring::parse("F8"), Error);
    CHECK_THROWS_AS(Ring::parse("Zq"), ParseError);
    Ring qv = Ring::rationals(true);
    RingElem x = qv.from_int(3) * qv.v_power(-1) + qv.from_int(2);
    CHECK(x.str() == "3*v^-1 + 2");
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(20261017);
    for (Ring r : {Ring::rationals(true), Ring::prime_field(7, true), Ring::truncated_padic(5, 4, true),
                   Ring::truncated_padic(3, 5)}) {
        for (int trial = 0; trial < 60; ++trial) {
            RingElem a = random_elem(r, rng), b = random_elem(r, rng), c = random_elem(r, rng);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a - a == r.zero());
        }
    }
}

TEST_CASE("valuation is additive up to the precision cap") {
    std::mt19937_64 rng(7);
    Ring z = Ring::truncated_padic(5, 6);
    std::uniform_int_distribution<long> d(-20000, 20000);
    for (int trial = 0; trial < 200; ++trial) {
        RingElem a = z.from_int(d(rng)), b = z.from_int(d(rng));
        CHECK(valuation(a * b) == std::min(valuation(a) + valuation(b), 6));
    }
}

TEST_CASE("laurent degrees are additive") {
    Ring r = Ring::prime_field(11, true);
    for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j)
            CHECK((r.from_int(2) * r.v_power(i) * r.v_power(j)).degree() == 2 * (i + j));
}
