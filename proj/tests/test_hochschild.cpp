#include <doctest.h>

#include "moore/error.hpp"
#include "moore/hochschild.hpp"
#include "moore/linalg.hpp"
#include "support.hpp"

using namespace moore;
using moore::testing::random_automorphism;
using moore::testing::random_scalar;
using moore::testing::random_series;
using moore::testing::random_unit;

namespace {

PowerSeries poly(const Ring& r, int trunc, std::initializer_list<std::pair<int, RingElem>> terms) {
    PowerSeries s(r, trunc);
    for (const auto& [i, c] : terms) s.set_coeff(i, c);
    return s;
}

}  // namespace

TEST_CASE("linear algebra over F_p and Q") {
    Ring f5 = Ring::prime_field(5);
    Matrix m(f5, 2, 3);
    m.at(0, 0) = f5.from_int(1);
    m.at(0, 1) = f5.from_int(2);
    m.at(1, 0) = f5.from_int(2);
    m.at(1, 1) = f5.from_int(4);
    m.at(1, 2) = f5.from_int(1);
    CHECK(rank(m) == 2);
    Matrix k = kernel(m);
    CHECK(k.cols() == 1);
    CHECK((m * k).is_zero());
    CHECK(row_echelon(m).pivots == std::vector<int>{0, 2});
    CHECK_THROWS_AS(Matrix(Ring::truncated_padic(5, 3), 1, 1), Error);
    CHECK_THROWS_AS(Matrix(Ring::rationals(true), 1, 1), Error);

    std::mt19937_64 rng(21);
    Ring q = Ring::rationals();
    for (int trial = 0; trial < 10; ++trial) {
        Matrix a(q, 4, 6);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 6; ++j) a.at(i, j) = trial % 3 == 0 && i == 3 ? a.at(0, j) : random_scalar(q, rng, 3);
        Matrix ka = kernel(a);
        CHECK(rank(a) + ka.cols() == 6);
        CHECK((a * ka).is_zero());
        CHECK(rank(a) == rank(a.transpose()));
    }
}

TEST_CASE("closed form over a field") {
    Ring q = Ring::rationals();
    HHReport r = hh_closed_form(MooreAlgebra::even(PowerSeries::identity(q, 6)));
    CHECK(r.rank == 0);
    CHECK(r.torsion == Torsion::NotApplicable);
    CHECK(r.derivative == PowerSeries::monomial(q, 5, q.one(), 0));
    CHECK_THROWS_AS(hh_closed_form(MooreAlgebra::even(poly(q, 6, {{2, q.one()}}))), Error);
}

TEST_CASE("closed form over Z/p^K: the two dga examples") {
    Ring r = Ring::truncated_padic(5, 6, true);
    RingElem p = r.from_int(5);
    RingElem v = r.v_power(1);

    HHReport inf = hh_closed_form(MooreAlgebra::even(poly(r, 12, {{1, p}})));
    CHECK(inf.torsion == Torsion::ResidueAlgebra);
    CHECK_FALSE(inf.rank.has_value());
    CHECK(inf.residue_criterion == true);
    CHECK_FALSE(inf.mod_p_height.has_value());

    HHReport one = hh_closed_form(MooreAlgebra::even(poly(r, 12, {{1, p}, {2, v}})));
    CHECK(one.torsion == Torsion::TorsionFree);
    CHECK(one.rank == 1);
    CHECK(one.ramification_index == 1);
    CHECK(one.mod_p_height == 2);
    CHECK(one.stated_index == 2);
    CHECK(one.discrepancy);
    CHECK(one.eisenstein_verified);
    CHECK(one.residue_criterion == false);
    REQUIRE(one.eisenstein.has_value());
    // 5 + 2v t = 2v (t + 5/(2v))
    CHECK(one.eisenstein->coeff(1) == r.one());
    CHECK(one.eisenstein->coeff(0) * r.from_int(2) * v == p);
}

TEST_CASE("the m^n family reports rank n-1 against height n") {
    Ring r = Ring::truncated_padic(5, 6, true);
    for (int n = 2; n <= 4; ++n) {
        PowerSeries u = poly(r, 12, {{1, r.from_int(5)}, {n, r.v_power(n)}});
        HHReport rep = hh_structure(MooreAlgebra::even(u));
        CHECK(rep.torsion == Torsion::TorsionFree);
        CHECK(rep.rank == n - 1);
        CHECK(rep.mod_p_height == n);
        CHECK(rep.discrepancy);
        CHECK(rep.eisenstein_verified);
        REQUIRE(rep.eisenstein.has_value());
        CHECK(rep.eisenstein->order() == 0);
    }
}

TEST_CASE("residue-algebra branch fires for u = pt + t^p") {
    Ring r = Ring::truncated_padic(5, 6);
    PowerSeries u = poly(r, 12, {{1, r.from_int(5)}, {5, r.one()}});
    HHReport rep = hh_structure(MooreAlgebra::even(u));
    CHECK(rep.torsion == Torsion::ResidueAlgebra);
    CHECK(rep.residue_criterion == true);
    CHECK(rep.mod_p_height == 5);
    CHECK_THROWS_AS(hh_structure(MooreAlgebra::even(poly(r, 12, {{1, r.from_int(25)}}))), Error);
    CHECK_THROWS_AS(hh_structure(MooreAlgebra::even(poly(Ring::rationals(), 4, {{1, Ring::rationals().one()}}))),
                    Error);
    CHECK_THROWS_AS(hh_closed_form(MooreAlgebra::even(poly(r, 12, {{1, r.zero()}, {2, r.one()}}))), Error);
}

TEST_CASE("property: residue criterion agrees with u' = 0 mod pi") {
    std::mt19937_64 rng(22);
    for (long p : {3L, 5L, 7L}) {
        Ring r = Ring::truncated_padic(p, 4);
        for (int trial = 0; trial < 15; ++trial) {
            PowerSeries u = random_series(r, 10, rng);
            if (trial % 2)
                for (int i = 2; i <= 10; ++i)
                    if (i % p) u.set_coeff(i, u.coeff(i) * r.from_int(p));
            u.set_coeff(1, r.from_int(p) * random_unit(r, rng));
            HHReport rep = hh_closed_form(MooreAlgebra::even(u));
            CHECK(rep.residue_criterion == (rep.torsion == Torsion::ResidueAlgebra));
            CHECK(rep.rank.has_value() == (rep.torsion == Torsion::TorsionFree));
        }
    }
}

TEST_CASE("property: closed-form invariants are orbit-stable") {
    std::mt19937_64 rng(23);
    Ring r = Ring::truncated_padic(7, 5);
    for (int trial = 0; trial < 12; ++trial) {
        PowerSeries u = random_series(r, 12, rng);
        u.set_coeff(1, r.from_int(7) * random_unit(r, rng));
        if (trial % 3 == 0) u.set_coeff(2, u.coeff(2) * r.from_int(7));
        MooreAlgebra m = MooreAlgebra::even(u);
        HHReport a = hh_closed_form(m);
        for (int j = 0; j < 3; ++j) {
            HHReport b = hh_closed_form(act(m, random_automorphism(r, 12, rng)));
            CHECK(a.rank == b.rank);
            CHECK(a.torsion == b.torsion);
            CHECK(a.mod_p_height == b.mod_p_height);
        }
    }
}

TEST_CASE("brute force examples") {
    Ring f5 = Ring::prime_field(5);
    HHBruteForce a = hh_bruteforce(MooreAlgebra::even(poly(f5, 8, {{2, f5.one()}})), 6);
    CHECK(a.tau_dims == std::vector<int>{1, 0, 0, 0, 0, 0, 0});
    CHECK(a.t_dims == std::vector<int>(7, 0));
    CHECK(a.d_squared_zero);

    Ring f3 = Ring::prime_field(3);
    HHBruteForce b = hh_bruteforce(MooreAlgebra::even(poly(f3, 8, {{3, f3.one()}})), 6);
    CHECK(b.tau_dims == std::vector<int>(7, 1));
    CHECK(b.differential_rank == 0);

    Ring q = Ring::rationals();
    HHBruteForce c = hh_bruteforce(MooreAlgebra::even(PowerSeries::identity(q, 8)), 6);
    CHECK(c.tau_dims == std::vector<int>(7, 0));
    CHECK(c.t_dims == std::vector<int>(7, 0));

    CHECK_THROWS_AS(hh_bruteforce(MooreAlgebra::even(PowerSeries::identity(Ring::truncated_padic(5, 3), 8)), 4),
                    Error);
    CHECK_THROWS_AS(hh_bruteforce(MooreAlgebra::even(PowerSeries::identity(q, 4)), 6), Error);
}

TEST_CASE("quotient oracle") {
    Ring f7 = Ring::prime_field(7);
    CHECK(quotient_dims(poly(f7, 8, {{3, f7.one()}}), 4) == std::vector<int>{1, 1, 0, 0, 0});
    CHECK(quotient_dims(poly(f7, 8, {{7, f7.one()}}), 4) == std::vector<int>(5, 1));
    CHECK(quotient_dims(poly(f7, 8, {{1, f7.one()}, {3, f7.one()}}), 4) == std::vector<int>(5, 0));
}

TEST_CASE("property: brute force matches R[t]/(u') with u' of every order") {
    std::mt19937_64 rng(24);
    for (long p : {5L, 7L}) {
        Ring f = Ring::prime_field(p);
        for (int trial = 0; trial < 10; ++trial) {
            PowerSeries u = random_series(f, 8, rng, 1 + trial % 5);
            HHBruteForce bf = hh_bruteforce(MooreAlgebra::even(u), 6);
            CHECK(bf.d_squared_zero);
            CHECK(bf.tau_dims == quotient_dims(u, 6));
        }
    }
}

TEST_CASE("brute force over a Laurent ring specializes v") {
    Ring f5 = Ring::prime_field(5, true);
    PowerSeries u = poly(f5, 8, {{3, f5.v_power(2)}});
    HHBruteForce bf = hh_bruteforce(MooreAlgebra::even(u), 6);
    CHECK(bf.tau_dims == std::vector<int>{1, 1, 0, 0, 0, 0, 0});
}
