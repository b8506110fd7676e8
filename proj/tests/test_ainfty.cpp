#include <doctest.h>

#include "moore/ainfty.hpp"
#include "support.hpp"

using namespace moore;
using moore::testing::random_cochain;
using moore::testing::random_parity_series;
using moore::testing::random_series;

namespace {

// Lambda(y) (x) R[x]/(x^2) with dy = x, |x| = 0, |y| = 1, on the bar side:
// m_1[a] = [da], m_2[a|b] = (-1)^{|a|}[ab].
AInfStructure exterior_dga(const Ring& r, int bound) {
    GradedBasis b = GradedBasis::make({"1", "x", "y", "xy"}, {0, 0, 1, 1});
    Cochain m(r, b, 1, bound);
    m.add({2}, 1, r.one());
    auto product = [](int a, int c) -> int {
        if (a == 0) return c;
        if (c == 0) return a;
        if ((a == 1 && c == 2) || (a == 2 && c == 1)) return 3;
        return -1;
    };
    for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) {
            int g = product(a, c);
            if (g < 0) continue;
            m.add({a, c}, g, (b.degrees[a] & 1) ? -r.one() : r.one());
        }
    return m;
}

MooreAlgebra random_even(const Ring& r, int trunc, std::mt19937_64& rng) {
    return MooreAlgebra::even(random_series(r, trunc, rng), 0);
}

MooreAlgebra random_odd(const Ring& r, int trunc, std::mt19937_64& rng) {
    return MooreAlgebra::odd(random_parity_series(r, trunc, rng, 0, 2), random_parity_series(r, trunc, rng, 0, 2), 1);
}

TensorExpr single(const Ring& r, BarWord w) { return TensorExpr{{std::move(w), r.one()}}; }

}  // namespace

TEST_CASE("graded basis") {
    GradedBasis b = GradedBasis::two_cell(0);
    CHECK(b.size() == 2);
    CHECK(b.index_of("y") == 1);
    CHECK(b.suspended_parity(0) == 1);
    CHECK(b.suspended_parity(1) == 0);
    CHECK_THROWS_AS(b.index_of("z"), Error);
    CHECK_THROWS_AS(GradedBasis::make({"1", "1"}, {0, 1}), Error);
    CHECK_THROWS_AS(GradedBasis::make({"e", "y"}, {1, 1}), Error);
    CHECK(bar_word_str(b, {0, 1, 1}) == "[1|y|y]");
}

TEST_CASE("coderivation_extend on small words") {
    Ring q = Ring::rationals();
    GradedBasis b = GradedBasis::make({"1", "a", "b", "c", "z"}, {0, 1, 2, 0, 3});
    Cochain m1(q, b, 1, 4);
    m1.add({1}, 4, q.from_int(3));
    CHECK(coderivation_extend(m1, {1}) == TensorExpr{{{4}, q.from_int(3)}});

    Cochain m2(q, b, 1, 4);
    m2.add({1, 2}, 4, q.one());
    m2.add({2, 3}, 1, q.from_int(5));
    CHECK(coderivation_extend(m2, {1, 2}) == TensorExpr{{{4}, q.one()}});
    // [a|b|c] -> [m2[a|b]|c] + (-1)^{|a|+1}[a|m2[b|c]]; |a| = 1
    TensorExpr e = coderivation_extend(m2, {1, 2, 3});
    CHECK(e == TensorExpr{{{4, 3}, q.one()}, {{1, 1}, q.from_int(5)}});
}

TEST_CASE("compose_components counts slots") {
    Ring q = Ring::rationals();
    GradedBasis b = GradedBasis::two_cell(0);
    MultiComponent m{2, 1, {{{0, 0}, {q.one(), q.zero()}}}};
    MultiComponent n{2, 1, {{{1, 1}, {q.one(), q.zero()}}}};
    MultiComponent mn = compose_components(m, n, b, q);
    CHECK(mn.arity == 3);
    CHECK(mn.parity == 0);
    // slot 0: m[n[y|y]|1] with no sign; slot 1: (-1)^{|n|*|[1]|} m[1|n[y|y]] = -[1]
    CHECK(mn.table.size() == 2);
    CHECK(mn.table.at({1, 1, 0})[0] == q.one());
    CHECK(mn.table.at({0, 1, 1})[0] == -q.one());

    MultiComponent id1{1, 0, {{{0}, {q.one(), q.zero()}}, {{1}, {q.zero(), q.one()}}}};
    MultiComponent d1{1, 1, {{{1}, {q.from_int(7), q.zero()}}}};
    CHECK(compose_components(id1, d1, b, q).table == d1.table);
    CHECK(compose_components(d1, id1, b, q).table == d1.table);
}

TEST_CASE("exterior dga satisfies Stasheff and is unital") {
    Ring q = Ring::rationals();
    AInfStructure m = exterior_dga(q, 6);
    CHECK(satisfies_stasheff(m));
    CHECK(is_unital(m));
    CHECK(m.is_homogeneous());
    CHECK(hochschild_differential(m, m).is_zero());

    Cochain broken = m;
    broken.add({0, 1, 2}, 3, q.one());
    CHECK_FALSE(is_unital(broken));
    Cochain bad_m2 = m;
    bad_m2.add({1, 0}, 1, q.one());
    CHECK_FALSE(is_unital(bad_m2));
}

TEST_CASE("an arity-0 cochain differentiates to the bar differential") {
    Ring q = Ring::rationals();
    AInfStructure m = exterior_dga(q, 6);
    const GradedBasis& b = m.basis();
    // c = [y], an even cochain of arity 0; [c, m] = -(m o c)
    Cochain c(q, b, b.suspended_parity(2), 6);
    c.add({}, 2, q.one());
    Cochain dc = hochschild_differential(c, m);
    CHECK(dc.bound() == 5);
    CHECK(dc.coeff({}, 1) == -q.one());  // -m_1[y] = -[x]
    // arity 1: -(m_2[y|a] + m_2[a|y]) vanishes since y is graded central
    CHECK(dc.max_arity() == 0);

    Cochain cx(q, b, b.suspended_parity(1), 6);
    cx.add({}, 1, q.one());
    // x is a cycle and graded central: m_1[x] = 0, m_2[x|a] = (-1)^{|[a]|} m_2[a|x]
    CHECK(hochschild_differential(cx, m).is_zero());
}

TEST_CASE("Moore structures satisfy Stasheff and agree with the cobar square") {
    std::mt19937_64 rng(11);
    Ring f7 = Ring::prime_field(7);
    for (int trial = 0; trial < 6; ++trial) {
        MooreAlgebra alg = trial % 2 ? random_odd(f7, 8, rng) : random_even(f7, 8, rng);
        AInfStructure m = moore_structure(alg, 8);
        CHECK(m.is_homogeneous());
        CHECK(is_unital(m));
        CHECK(satisfies_stasheff(m));
        CHECK(check_square_zero(moore_mstar(alg, 8)).ok);
    }
}

TEST_CASE("bar and cobar square-zero checks agree on arbitrary derivations") {
    std::mt19937_64 rng(12);
    Ring f5 = Ring::prime_field(5);
    int failures = 0;
    for (int trial = 0; trial < 8; ++trial) {
        GradedBasis b = GradedBasis::two_cell(trial % 2);
        Cochain m = random_cochain(f5, b, 1, 1, 4, 6, rng, 0.3);
        if (trial % 4 == 0) m = moore_structure(trial % 8 ? random_odd(f5, 6, rng) : random_even(f5, 6, rng), 6);
        Derivation xi = undualize(m);
        SquareZeroResult sq = check_square_zero(xi);
        CHECK(satisfies_stasheff(m) == sq.ok);
        if (!sq.ok) ++failures;
        // the square itself dualizes to m o m
        Derivation square;
        square.on_tau = sq.on_tau;
        square.on_t = sq.on_t;
        square.parity = 0;
        CHECK(dualize(square, m.basis()).agrees_with(stasheff_defect(m)));
    }
    CHECK(failures > 0);
}

TEST_CASE("dualize reads off the characteristic series") {
    Ring z = Ring::truncated_padic(5, 6);
    PowerSeries u(z, 6);
    u.set_coeff(1, z.from_int(5));
    AInfStructure m = moore_structure(MooreAlgebra::even(u), 6);
    CHECK(m.coeff({1}, 0) == z.from_int(5));
    CHECK(m.coeff({0, 0}, 0) == z.one());
    CHECK(m.coeff({0, 1}, 1) == z.one());
    CHECK(m.coeff({1, 0}, 1) == -z.one());
    CHECK(m.coeff({1, 1}, 0).is_zero());

    std::mt19937_64 rng(13);
    Ring q = Ring::rationals();
    PowerSeries r = random_series(q, 7, rng);
    AInfStructure mr = moore_structure(MooreAlgebra::even(r), 7);
    for (int i = 1; i <= 7; ++i) {
        CHECK(mr.coeff(BarWord(i, 1), 0) == r.coeff(i));
        CHECK(mr.coeff(BarWord(i, 1), 1).is_zero());
    }

    PowerSeries v = random_parity_series(q, 8, rng, 0, 2);
    PowerSeries w = random_parity_series(q, 8, rng, 0, 2);
    AInfStructure mo = moore_structure(MooreAlgebra::odd(v, w), 8);
    for (int i = 1; i <= 4; ++i) {
        CHECK(mo.coeff(BarWord(2 * i, 1), 1) == v.coeff(2 * i));
        CHECK(mo.coeff(BarWord(2 * i, 1), 0) == w.coeff(2 * i));
    }
    CHECK(mo.coeff({1, 0}, 1) == q.one());
    CHECK(mo.coeff({0, 1}, 1) == q.one());

    CHECK_THROWS_AS(dualize(moore_mstar(MooreAlgebra::even(u), 6), GradedBasis::two_cell(1)), Error);
    CHECK_THROWS_AS(dualize(moore_mstar(MooreAlgebra::even(u), 6), GradedBasis::make({"1", "a", "b"}, {0, 1, 1})),
                    Error);
}

TEST_CASE("property: dualize round trip") {
    std::mt19937_64 rng(14);
    Ring f7 = Ring::prime_field(7);
    for (int trial = 0; trial < 20; ++trial) {
        MooreAlgebra alg = trial % 2 ? random_odd(f7, 8, rng) : random_even(f7, 8, rng);
        Derivation xi = moore_mstar(alg, 8);
        Cochain m = dualize(xi, GradedBasis::two_cell(alg.d));
        CHECK(undualize(m) == xi);
        CHECK(dualize(undualize(m), m.basis()) == m);
    }
}

TEST_CASE("bar contraction is unsigned") {
    std::mt19937_64 rng(15);
    Ring f5 = Ring::prime_field(5);
    std::vector<AInfStructure> structures{exterior_dga(f5, 8), moore_structure(random_even(f5, 8, rng), 8),
                                          moore_structure(random_odd(f5, 8, rng), 8)};
    for (const auto& m : structures) {
        std::uniform_int_distribution<int> gen(0, m.basis().size() - 1);
        for (int trial = 0; trial < 10; ++trial) {
            BarWord w(1 + trial % 5);
            for (int& g : w) g = gen(rng);
            TensorExpr e = single(f5, w);
            TensorExpr lhs = coderivation_apply(m, bar_contraction(m.basis(), e));
            for (const auto& [x, c] : bar_contraction(m.basis(), coderivation_apply(m, e))) {
                auto [it, fresh] = lhs.try_emplace(x, c);
                if (!fresh) {
                    it->second += c;
                    if (it->second.is_zero()) lhs.erase(it);
                }
            }
            CHECK(lhs == e);
        }
    }
}

TEST_CASE("morphism_extend") {
    Ring q = Ring::rationals();
    GradedBasis b = GradedBasis::two_cell(0);
    Cochain id(q, b, 0, 6);
    id.add({0}, 0, q.one());
    id.add({1}, 1, q.one());
    CHECK(morphism_extend(id, {0, 1, 1}) == single(q, {0, 1, 1}));

    Cochain f = id;
    f.add({1, 1}, 1, q.from_int(2));
    // [y|y|y] -> [y|y|y] + 2[y|y] + 2[y|y]
    CHECK(morphism_extend(f, {1, 1, 1}) == TensorExpr{{{1, 1, 1}, q.one()}, {{1, 1}, q.from_int(4)}});
    Cochain odd(q, b, 1, 6);
    CHECK_THROWS_AS(morphism_extend(odd, {0}), Error);
}

TEST_CASE("Hochschild differential squares to zero") {
    std::mt19937_64 rng(16);
    Ring f5 = Ring::prime_field(5);
    for (int trial = 0; trial < 6; ++trial) {
        MooreAlgebra alg = trial % 2 ? random_odd(f5, 10, rng) : random_even(f5, 10, rng);
        AInfStructure m = moore_structure(alg, 10);
        Cochain c = random_cochain(f5, m.basis(), trial % 3 == 0, 0, 3, 10, rng);
        Cochain dc = hochschild_differential(c, m);
        CHECK(dc.parity() == (c.parity() ^ 1));
        CHECK(hochschild_differential(dc, m).is_zero());
        CHECK(hochschild_differential(m, m).is_zero());
    }
}

TEST_CASE("normalized cochains form a subcomplex") {
    std::mt19937_64 rng(17);
    Ring f5 = Ring::prime_field(5);
    GradedBasis b = GradedBasis::two_cell(0);
    AInfStructure m = moore_structure(random_even(f5, 10, rng), 10);
    for (int trial = 0; trial < 5; ++trial) {
        Cochain c(f5, b, trial % 2, 10);
        for (int n = 1; n <= 4; ++n) c.add(BarWord(n, 1), trial % 2 ? 0 : 1, f5.from_int(trial + n));
        REQUIRE(is_normalized(c));
        REQUIRE(c.is_homogeneous());
        CHECK(is_normalized(hochschild_differential(c, m)));
        for (int i = 0; i < 4; ++i) CHECK(h_op(i, c, m) == c.truncated(h_op(i, c, m).bound()));
    }
}

TEST_CASE("h_i raises normalization by one with the prefix sign reading") {
    std::mt19937_64 rng(18);
    Ring f5 = Ring::prime_field(5);
    bool all_reading_fails = false;
    for (int trial = 0; trial < 10; ++trial) {
        MooreAlgebra alg = trial % 2 ? random_odd(f5, 12, rng) : random_even(f5, 12, rng);
        AInfStructure m = moore_structure(alg, 12);
        Cochain c = random_cochain(f5, m.basis(), trial % 2, 2, 2, 12, rng, 1.0);
        Cochain cur = c;
        for (int i = 0; i < 3; ++i) {
            REQUIRE(is_i_normalized(cur, i));
            Cochain next = h_op(i, cur, m);
            CHECK(is_i_normalized(next, i + 1));
            CHECK(hochschild_differential(next, m).agrees_with(h_op(i, hochschild_differential(cur, m), m)));
            if (!is_i_normalized(h_op(i, cur, m, InsertSign::All), i + 1)) all_reading_fails = true;
            cur = next;
        }
    }
    CHECK(all_reading_fails);
}

TEST_CASE("normalize_cochain retracts onto normalized cochains") {
    std::mt19937_64 rng(19);
    Ring f5 = Ring::prime_field(5);
    for (int trial = 0; trial < 6; ++trial) {
        AInfStructure m = moore_structure(random_even(f5, 14, rng), 14);
        Cochain c = random_cochain(f5, m.basis(), trial % 2, 1, 3, 14, rng);
        NormalizationResult r = normalize_cochain(c, m, 3);
        Cochain n = r.normalized;
        CHECK(n.bound() >= 3);
        CHECK(is_i_normalized(n.truncated(3), 3));
        // c - N = dH + K
        Cochain rhs = hochschild_differential(r.homotopy, m) + r.defect;
        CHECK((c - n).agrees_with(rhs));

        // a coboundary normalizes with no defect
        Cochain cob = hochschild_differential(c, m);
        NormalizationResult rc = normalize_cochain(cob, m, 3);
        CHECK(rc.defect.is_zero());
        CHECK((cob - rc.normalized).agrees_with(hochschild_differential(rc.homotopy, m)));
    }
}
