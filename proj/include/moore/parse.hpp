#pragma once

// Text forms of ring elements and series. Grammar (whitespace is free
// between tokens):
//
//   expr   := [sign] term { sign term }
//   sign   := '+' | '-'
//   term   := factor { '*' factor }
//   factor := nat [ '/' nat ] | name [ '^' int ] | '(' expr ')'
//   name   := 't' | 'v' | indeterminate of the ring
//   nat    := digit { digit }
//   int    := [ '-' ] nat
//
// `t` is the series variable (non-negative exponents), `v` the Laurent
// variable (any exponent, Laurent rings only). Terms of t-degree above the
// truncation are dropped. Every string produced by `str()` parses back to an
// equal value.

#include <string_view>

#include "moore/rings.hpp"
#include "moore/series.hpp"

namespace moore {

/// Throws ParseError with the byte offset of the offending token.
RingElem parse_ring_elem(const Ring& ring, std::string_view text);
PowerSeries parse_series(const Ring& ring, std::string_view text, int trunc);

}  // namespace moore
