#include "moore/json_io.hpp"

#include <cctype>
#include <string>

#include "moore/parse.hpp"

namespace moore {

Json to_json(const PowerSeries& s) {
    Json coeffs = Json::object();
    for (int i = 0; i <= s.trunc(); ++i)
        if (!s.coeff(i).is_zero()) coeffs[std::to_string(i)] = s.coeff(i).str();
    return Json{{"ring", s.ring().spec()}, {"trunc", s.trunc()}, {"coeffs", coeffs}};
}

PowerSeries series_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("series document must be an object", 0);
    for (const char* key : {"ring", "trunc", "coeffs"})
        if (!j.contains(key)) throw ParseError(std::string("missing key '") + key + "'", 0);
    if (!j["ring"].is_string()) throw ParseError("'ring' must be a string", 0);
    if (!j["trunc"].is_number_integer()) throw ParseError("'trunc' must be an integer", 0);
    if (!j["coeffs"].is_object()) throw ParseError("'coeffs' must be an object", 0);
    const Ring ring = Ring::parse(j["ring"].get<std::string>());
    const long trunc = j["trunc"].get<long>();
    if (trunc < 0 || trunc > 100000) throw ParseError("'trunc' out of range", 0);
    PowerSeries s(ring, static_cast<int>(trunc));
    for (const auto& [key, value] : j["coeffs"].items()) {
        std::size_t used = 0;
        long degree = -1;
        try {
            degree = std::stol(key, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != key.size() || degree < 0 || key.empty() || !std::isdigit(static_cast<unsigned char>(key[0])))
            throw ParseError("coefficient key '" + key + "' is not a degree", 0);
        if (!value.is_string() && !value.is_number_integer())
            throw ParseError("coefficient of degree " + key + " must be a string or integer", 0);
        const std::string text = value.is_string() ? value.get<std::string>() : value.dump();
        RingElem c;
        try {
            c = parse_ring_elem(ring, text);
        } catch (const ParseError& e) {
            throw ParseError("in coefficient of degree " + key + ": " + e.message(), e.position());
        }
        if (degree <= trunc) s.set_coeff(static_cast<int>(degree), s.coeff(static_cast<int>(degree)) + c);
    }
    return s;
}

PowerSeries series_from_json_text(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
    }
    return series_from_json(j);
}

namespace {

template <class T>
Json optional_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const HHReport& r) {
    Json j;
    j["derivative"] = to_json(r.derivative);
    j["quotient"] = r.quotient;
    j["rank"] = r.rank ? Json(*r.rank) : Json("infinity");
    j["torsion"] = torsion_name(r.torsion);
    j["ramification_index"] = optional_json(r.ramification_index);
    j["eisenstein"] = r.eisenstein ? to_json(*r.eisenstein) : Json(nullptr);
    j["eisenstein_precision"] = r.eisenstein_precision;
    j["eisenstein_verified"] = r.eisenstein_verified;
    j["mod_p_height"] = optional_json(r.mod_p_height);
    j["stated_index"] = optional_json(r.stated_index);
    j["discrepancy"] = r.discrepancy;
    j["residue_criterion"] = optional_json(r.residue_criterion);
    return j;
}

Json to_json(const HHBruteForce& b) {
    return Json{{"maxdeg", b.maxdeg},
                {"tau_dims", b.tau_dims},
                {"t_dims", b.t_dims},
                {"differential_rank", b.differential_rank},
                {"d_squared_zero", b.d_squared_zero}};
}

Json to_json(const CanonicalForm& c) {
    Json j;
    j["kind"] = c.kind_name();
    j["n"] = c.n;
    j["form"] = to_json(c.form);
    j["witness"] = to_json(c.witness);
    j["normalized"] = to_json(c.normalized);
    j["coefficient_precision"] = c.coefficient_precision;
    j["steps"] = c.steps;
    return j;
}

Json to_json(const OrbitInvariant& o) {
    return Json{{"n", o.n}, {"representative", o.representative.str()}};
}

Json to_json(const SquareZeroResult& s) {
    Json j{{"ok", s.ok}};
    if (!s.ok) {
        j["generator"] = s.generator;
        j["failing_word"] = s.failing_word;
        j["coefficient"] = s.coefficient.str();
    }
    return j;
}

Json to_json(const DegreeViolation& v) {
    return Json{{"name", v.name},
                {"expected", v.expected},
                {"actual", optional_json(v.actual)},
                {"coefficient", v.coefficient}};
}

Json to_json(const Cochain& c) {
    Json entries = Json::array();
    for (const auto& [w, out] : c.entries())
        for (int g = 0; g < c.basis().size(); ++g)
            if (!out[g].is_zero())
                entries.push_back(Json{{"word", bar_word_str(c.basis(), w)},
                                       {"output", c.basis().names[g]},
                                       {"coeff", out[g].str()}});
    return Json{{"ring", c.ring().spec()},
                {"parity", c.parity()},
                {"bound", c.bound()},
                {"entries", entries}};
}

Cochain cochain_from_json(const Json& j, const GradedBasis& basis) {
    if (!j.is_object()) throw ParseError("cochain document must be an object", 0);
    for (const char* key : {"ring", "parity", "bound", "entries"})
        if (!j.contains(key)) throw ParseError(std::string("missing key '") + key + "'", 0);
    if (!j["ring"].is_string() || !j["parity"].is_number_integer() || !j["bound"].is_number_integer() ||
        !j["entries"].is_array())
        throw ParseError("cochain keys have the wrong types", 0);
    const Ring ring = Ring::parse(j["ring"].get<std::string>());
    const long parity = j["parity"].get<long>();
    const long bound = j["bound"].get<long>();
    if ((parity != 0 && parity != 1) || bound < 0 || bound > 64) throw ParseError("parity or bound out of range", 0);
    Cochain c(ring, basis, static_cast<int>(parity), static_cast<int>(bound));
    auto generator = [&](const std::string& name, std::size_t entry) {
        for (int g = 0; g < basis.size(); ++g)
            if (basis.names[g] == name) return g;
        throw ParseError("entry " + std::to_string(entry) + ": unknown generator '" + name + "'", 0);
    };
    std::size_t index = 0;
    for (const Json& e : j["entries"]) {
        if (!e.is_object() || !e.contains("word") || !e.contains("output") || !e.contains("coeff") ||
            !e["word"].is_string() || !e["output"].is_string() || !e["coeff"].is_string())
            throw ParseError("entry " + std::to_string(index) + " needs string word, output and coeff", 0);
        const std::string w = e["word"].get<std::string>();
        if (w.size() < 2 || w.front() != '[' || w.back() != ']')
            throw ParseError("entry " + std::to_string(index) + ": word must look like [a|b]", 0);
        BarWord word;
        const std::string body = w.substr(1, w.size() - 2);
        std::size_t start = 0;
        while (!body.empty()) {
            const auto bar = body.find('|', start);
            word.push_back(generator(body.substr(start, bar == std::string::npos ? std::string::npos : bar - start),
                                     index));
            if (bar == std::string::npos) break;
            start = bar + 1;
        }
        RingElem coeff;
        try {
            coeff = parse_ring_elem(ring, e["coeff"].get<std::string>());
        } catch (const ParseError& err) {
            throw ParseError("entry " + std::to_string(index) + " coeff: " + err.message(), err.position());
        }
        const int out = generator(e["output"].get<std::string>(), index);
        if (!coeff.is_zero() && ((bar_parity(basis, word) + basis.suspended_parity(out) + c.parity()) & 1))
            throw Error(ErrorCode::ParityMismatch, "entry " + std::to_string(index) + " has the wrong parity");
        c.add(word, out, coeff);
        ++index;
    }
    return c;
}

}  // namespace moore
