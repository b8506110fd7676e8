#include <doctest.h>

#include "moore/json_io.hpp"
#include "moore/parse.hpp"
#include "support.hpp"

using namespace moore;

namespace {

std::size_t error_position(const Ring& r, const std::string& text) {
    try {
        parse_series(r, text, 8);
    } catch (const ParseError& e) {
        return e.position();
    }
    FAIL("no parse error for " << text);
    return 0;
}

// coefficients mixing powers of v and several scalars
PowerSeries random_laurent_series(const Ring& r, int trunc, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> vexp(-3, 3);
    std::uniform_int_distribution<int> terms(0, 3);
    PowerSeries s(r, trunc);
    for (int i = 0; i <= trunc; ++i) {
        RingElem c = r.zero();
        for (int k = terms(rng); k > 0; --k) c += testing::random_scalar(r, rng) * r.v_power(vexp(rng));
        s.set_coeff(i, c);
    }
    return s;
}

}  // namespace

TEST_CASE("series text: documented examples") {
    const Ring r = Ring::parse("Zp:5:6[v]");
    PowerSeries u = parse_series(r, "5*t + v*t^2 + 3*t^4", 8);
    CHECK(u.coeff(1) == r.from_int(5));
    CHECK(u.coeff(2) == r.v_power(1));
    CHECK(u.coeff(3).is_zero());
    CHECK(u.coeff(4) == r.from_int(3));
    CHECK(u.str() == "5*t + v*t^2 + 3*t^4");

    // order of terms, repeated powers, products and parentheses
    CHECK(parse_series(r, "t^4*3 + t^2*v + 2*t + 3*t", 8) == u);
    CHECK(parse_series(r, "(3*v^-1 + 2)*t^3", 8).coeff(3) == r.from_int(3) * r.v_power(-1) + r.from_int(2));
    CHECK(parse_series(r, "(1 + t)*(1 - t)", 8) == parse_series(r, "1 - t^2", 8));
    CHECK(parse_series(r, "  -  t ", 8).coeff(1) == r.from_int(-1));
    CHECK(parse_series(r, "0", 8).is_zero());
    // terms above the truncation are dropped
    CHECK(parse_series(r, "t + t^9", 8) == parse_series(r, "t", 8));

    const Ring q = Ring::rationals();
    CHECK(parse_series(q, "1/2*t - 5/4*t^4", 6).coeff(4) == q.from_rational(mpq_class(-5, 4)));
    const Ring f = Ring::parse("F7");
    CHECK(parse_series(f, "1/2*t", 4).coeff(1) == f.from_int(4));
}

TEST_CASE("series text: error positions") {
    const Ring r = Ring::parse("Zp:5:6");
    CHECK(error_position(r, "5*t +") == 5);
    CHECK(error_position(r, "5*t + v*t^2") == 6);  // no v in this ring
    CHECK(error_position(r, "5*x") == 2);
    CHECK(error_position(r, "t^-2") == 2);
    CHECK(error_position(r, "(t + 1") == 6);
    CHECK(error_position(r, "t t") == 2);
    CHECK(error_position(r, "1/0*t") == 2);
    CHECK(error_position(r, "1/5*t") == 0);  // 5 is not invertible
    CHECK(error_position(r, "") == 0);
    CHECK(error_position(r, "t^99999999999") == 2);
    CHECK_THROWS_AS(parse_ring_elem(r, "t"), ParseError);
    CHECK_THROWS_AS(Ring::parse("Zp:5"), ParseError);
    CHECK_THROWS_AS(Ring::parse("F99999999999999"), ParseError);
    CHECK_THROWS_AS(Ring::parse("G5"), ParseError);
}

TEST_CASE("series text: round trip property") {
    std::mt19937_64 rng(20261017);
    std::vector<Ring> rings = {Ring::rationals(), Ring::parse("F7"), Ring::parse("Zp:5:6"),
                               Ring::parse("Q[v]"), Ring::parse("F5[v]"), Ring::parse("Zp:3:4[v]"),
                               Ring::rationals().with_symbols({"u1", "u2"})};
    for (const Ring& r : rings)
        for (int trial = 0; trial < 40; ++trial) {
            PowerSeries s = r.laurent() ? random_laurent_series(r, 10, rng) : testing::random_series(r, 10, rng, 0);
            if (!r.symbols().empty())
                s.set_coeff(3, r.symbol(0) * r.symbol(1).pow(2) - r.from_int(4) * r.symbol(0));
            INFO(r.spec() << " " << s.str());
            CHECK(parse_series(r, s.str(), 10) == s);
            for (const RingElem& c : s.coeffs()) CHECK(parse_ring_elem(r, c.str()) == c);
            CHECK(series_from_json(to_json(s)) == s);
            CHECK(series_from_json_text(to_json(s).dump()) == s);
        }
}

TEST_CASE("series json: shape and errors") {
    const Ring r = Ring::parse("Zp:5:6[v]");
    PowerSeries u = parse_series(r, "5*t + v*t^2", 12);
    Json j = to_json(u);
    CHECK(j.dump() == R"({"ring":"Zp:5:6[v]","trunc":12,"coeffs":{"1":"5","2":"v"}})");
    CHECK(series_from_json_text(R"({"ring":"Q","trunc":3,"coeffs":{"1":2,"3":"1/2"}})") ==
          parse_series(Ring::rationals(), "2*t + 1/2*t^3", 3));
    CHECK_THROWS_AS(series_from_json_text(R"({"ring":"Q","trunc":3)"), ParseError);
    CHECK_THROWS_AS(series_from_json_text(R"({"ring":"Q","coeffs":{}})"), ParseError);
    CHECK_THROWS_AS(series_from_json_text(R"({"ring":"Q","trunc":3,"coeffs":{"x":"1"}})"), ParseError);
    CHECK_THROWS_AS(series_from_json_text(R"({"ring":"Q","trunc":3,"coeffs":{"1":"t"}})"), ParseError);
}

TEST_CASE("report json carries every field") {
    const Ring r = Ring::parse("Zp:5:6[v]");
    HHReport rep = hh_closed_form(MooreAlgebra::even(parse_series(r, "5*t + v*t^2", 12)));
    Json j = to_json(rep);
    for (const char* key : {"derivative", "quotient", "rank", "torsion", "ramification_index", "eisenstein",
                            "eisenstein_precision", "eisenstein_verified", "mod_p_height", "stated_index",
                            "discrepancy", "residue_criterion"})
        CHECK(j.contains(key));
    CHECK(j["torsion"] == "torsion-free");
    CHECK(j["rank"] == 1);
    CHECK(series_from_json(j["derivative"]) == rep.derivative);
    HHReport res = hh_closed_form(MooreAlgebra::even(parse_series(r, "5*t", 12)));
    CHECK(to_json(res)["rank"] == "infinity");
}
