#pragma once

// JSON forms of the library's values. Series serialize as
//   {"ring": "Zp:5:6[v]", "trunc": 12, "coeffs": {"1": "5", "2": "v"}}
// with zero coefficients omitted; the other values mirror their fields.

#include <json.hpp>

#include "moore/ainfty.hpp"
#include "moore/hochschild.hpp"
#include "moore/moduli.hpp"
#include "moore/noncomm.hpp"
#include "moore/series.hpp"

namespace moore {

using Json = nlohmann::ordered_json;

Json to_json(const PowerSeries& s);
/// Throws ParseError for malformed documents; positions inside a
/// coefficient string are reported relative to that string.
PowerSeries series_from_json(const Json& j);
/// Parses JSON text first; syntax errors carry the byte offset.
PowerSeries series_from_json_text(std::string_view text);

Json to_json(const HHReport& r);
Json to_json(const HHBruteForce& b);
Json to_json(const CanonicalForm& c);
Json to_json(const OrbitInvariant& o);
Json to_json(const SquareZeroResult& s);
Json to_json(const DegreeViolation& v);
Json to_json(const Cochain& c);
/// Reads the form written by to_json(Cochain): entries {"word": "[1|y]",
/// "output": "y", "coeff": "3"} over the given basis. Throws ParseError.
Cochain cochain_from_json(const Json& j, const GradedBasis& basis);

}  // namespace moore
