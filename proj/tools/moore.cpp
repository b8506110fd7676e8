// moore: command-line front end for the Moore algebra library.
//
// Exit status: 0 success, 1 a checked property fails, 2 parse error,
// 3 domain error, 4 internal invariant breach. Nothing is written to
// stdout unless the command succeeds.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "moore/ainfty.hpp"
#include "moore/hochschild.hpp"
#include "moore/json_io.hpp"
#include "moore/moduli.hpp"
#include "moore/parse.hpp"
#include "moore/random.hpp"
#include "moore/selftest.hpp"

namespace {

using namespace moore;

/// ParseError raised while reading one flag's value.
struct ArgumentError {
    std::string flag;
    std::string text;
    ParseError error;
};

struct Options {
    std::string ring = "Q";
    int trunc = 16;
    bool json = false;
    std::uint64_t seed = 1;
    std::string parity = "even";
    int d = -1;
    int arity = 8;
    int length = 0;
    int maxdeg = -1;
    int suite = 0;
    std::string series, other, by, a, b, g, v, w, cochain;
};

/// Result of one verb: machine and human forms, and the exit status.
struct Output {
    Json json = Json::object();
    std::ostringstream text;
    int status = 0;
};

template <class Fn>
auto with_flag(const std::string& flag, const std::string& text, Fn fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        throw ArgumentError{flag, text, e};
    }
}

class Context {
public:
    explicit Context(const Options& o) : o_(o) {}

    Ring ring() const {
        return with_flag("--ring", o_.ring, [&] { return Ring::parse(o_.ring); });
    }

    /// Text series in --ring at --trunc, or a JSON series document.
    PowerSeries series(const std::string& flag, const std::string& text) const {
        if (text.empty()) throw Error(ErrorCode::InvalidArgument, flag + " is required");
        const auto first = text.find_first_not_of(" \t\n");
        if (first != std::string::npos && text[first] == '{')
            return with_flag(flag, "", [&] { return series_from_json_text(text); });
        const Ring r = ring();
        return with_flag(flag, text, [&] { return parse_series(r, text, o_.trunc); });
    }

    bool odd() const {
        if (o_.parity == "even") return false;
        if (o_.parity == "odd") return true;
        throw ArgumentError{"--parity", o_.parity, ParseError("expected 'even' or 'odd'", 0)};
    }

    int grading() const {
        if (o_.d >= 0) return o_.d;
        return odd() ? 1 : 0;
    }

    MooreAlgebra algebra() const {
        if (!odd()) return MooreAlgebra::even(series("--series", o_.series), grading());
        return MooreAlgebra::odd(series("--v", o_.v), series("--w", o_.w), grading());
    }

    const Options& opts() const { return o_; }

private:
    const Options& o_;
};

std::string pass(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string optional_int(const std::optional<int>& x) { return x ? std::to_string(*x) : "-"; }

void describe(Output& out, const MooreAlgebra& m) {
    out.json["ring"] = m.ring().spec();
    out.json["parity"] = m.is_even() ? "even" : "odd";
    out.json["d"] = m.d;
    if (m.is_even()) {
        out.json["u"] = to_json(m.u);
        out.text << "structure: even, d = " << m.d << ", u = " << m.u.str() << " over " << m.ring().spec() << "\n";
    } else {
        out.json["v"] = to_json(m.v);
        out.json["w"] = to_json(m.w);
        out.text << "structure: odd, d = " << m.d << ", v = " << m.v.str() << ", w = " << m.w.str() << " over "
                 << m.ring().spec() << "\n";
    }
}

// ---------------------------------------------------------------------------
// verbs

void cmd_check(const Context& c, Output& out) {
    const MooreAlgebra m = c.algebra();
    const int length = c.opts().length > 0 ? c.opts().length : std::min(m.trunc(), Word::kMaxLength);
    const int arity = std::min(c.opts().arity, m.trunc());
    SquareZeroResult cobar = check_square_zero(moore_mstar(m, length));
    AInfStructure bar = moore_structure(m, arity);
    const bool stasheff = satisfies_stasheff(bar);
    const bool unital = is_unital(bar);
    describe(out, m);
    out.json["word_length"] = length;
    out.json["arity"] = arity;
    out.json["cobar"] = to_json(cobar);
    out.json["stasheff"] = stasheff;
    out.json["unital"] = unital;
    out.text << "m*∘m* = 0 (words <= " << length << "): " << pass(cobar.ok) << "\n";
    if (!cobar.ok)
        out.text << "  first defect: " << cobar.coefficient.str() << " on " << cobar.failing_word << " in m*(m*("
                 << cobar.generator << "))\n";
    out.text << "m∘m = 0 (arities <= " << arity << "): " << pass(stasheff) << "\n";
    out.text << "unital: " << pass(unital) << "\n";
    out.status = cobar.ok && stasheff && unital ? 0 : 1;
}

void cmd_act(const Context& c, Output& out) {
    const PowerSeries f = c.series("--by", c.opts().by);
    out.json["by"] = to_json(f);
    if (!c.odd()) {
        const MooreAlgebra m = MooreAlgebra::even(c.series("--series", c.opts().series), c.grading());
        const MooreAlgebra moved = act(m, f);
        out.json["u"] = to_json(moved.u);
        out.text << moved.u.str() << "\n";
        return;
    }
    const PowerSeries a = c.series("--a", c.opts().a);
    const PowerSeries b = c.series("--b", c.opts().b);
    const PowerSeries g = c.opts().g.empty() ? PowerSeries(a.ring(), a.trunc()) : c.series("--g", c.opts().g);
    auto [a2, b2] = act_full(a, b, g, f);
    out.json["a"] = to_json(a2);
    out.json["b"] = to_json(b2);
    out.text << "A = " << a2.str() << "\nB = " << b2.str() << "\n";
}

void cmd_height(const Context& c, Output& out) {
    const PowerSeries u = c.series("--series", c.opts().series);
    const int h = height(u);
    out.json["height"] = h;
    out.text << "height: " << h << "\n";
    if (u.ring().has_uniformizer()) {
        const PowerSeries reduced = reduce_mod_pi(u);
        const std::optional<int> hp = reduced.order();
        out.json["mod_p_height"] = hp ? Json(*hp) : Json(nullptr);
        out.text << "mod-p height: " << optional_int(hp) << "\n";
    }
}

void cmd_canonicalize(const Context& c, Output& out) {
    const PowerSeries u = c.series("--series", c.opts().series);
    const CanonicalForm cf = canonicalize(u);
    out.json = to_json(cf);
    out.text << "kind: " << cf.kind_name() << "\n"
             << "degree: " << cf.n << "\n"
             << "form: " << cf.form.str() << "\n"
             << "witness: " << cf.witness.str() << "\n";
    if (!cf.coefficient_precision.empty()) {
        out.text << "normalized: " << cf.normalized.str() << "\n" << "precision:";
        for (int e : cf.coefficient_precision) out.text << ' ' << e;
        out.text << "\n";
    }
}

void cmd_invariant(const Context& c, Output& out) {
    const OrbitInvariant inv = orbit_invariant(MooreAlgebra::even(c.series("--series", c.opts().series)));
    out.json = to_json(inv);
    out.text << "height " << inv.n << ", class " << inv.representative.str() << "\n";
}

void cmd_equivalent(const Context& c, Output& out) {
    const MooreAlgebra a = MooreAlgebra::even(c.series("--series", c.opts().series));
    const MooreAlgebra b = MooreAlgebra::even(c.series("--other", c.opts().other));
    const bool eq = equivalent(a, b);
    out.json["equivalent"] = eq;
    out.text << (eq ? "equivalent" : "not equivalent") << "\n";
}

void cmd_hochschild(const Context& c, Output& out) {
    const MooreAlgebra m = MooreAlgebra::even(c.series("--series", c.opts().series));
    const HHReport rep = hh_closed_form(m);
    std::optional<HHBruteForce> bf;
    if (c.opts().maxdeg >= 0) bf = hh_bruteforce(m, c.opts().maxdeg);
    out.json = to_json(rep);
    if (bf) out.json["bruteforce"] = to_json(*bf);

    auto row = [&](const std::string& key, const std::string& value) {
        out.text << std::left << std::setw(20) << key << value << "\n";
    };
    row("HH*", rep.quotient);
    row("derivative", rep.derivative.str());
    row("torsion", torsion_name(rep.torsion));
    row("rank", rep.rank ? std::to_string(*rep.rank) : "infinite");
    if (rep.ramification_index) row("ramification index", std::to_string(*rep.ramification_index));
    if (rep.eisenstein)
        row("eisenstein", rep.eisenstein->str() + " (mod pi^" + std::to_string(rep.eisenstein_precision) +
                              (rep.eisenstein_verified ? ", verified)" : ", unverified)"));
    if (m.ring().has_uniformizer()) {
        row("mod-p height", optional_int(rep.mod_p_height));
        row("stated index", optional_int(rep.stated_index));
        row("discrepancy", rep.discrepancy ? "yes" : "no");
        if (rep.residue_criterion) row("u = v(t^p) mod pi", *rep.residue_criterion ? "yes" : "no");
    }
    if (bf) {
        std::ostringstream tau, t;
        for (int x : bf->tau_dims) tau << x << ' ';
        for (int x : bf->t_dims) t << x << ' ';
        row("brute force d_tau", tau.str());
        row("brute force d_t", t.str());
        row("d^2 = 0", pass(bf->d_squared_zero));
    }
}

void cmd_verify_universal(const Context& c, Output& out) {
    const int length = c.opts().trunc;
    const UniversalCheck u = verify_universal(c.odd(), c.opts().arity, length, c.opts().arity);
    out.json["parity"] = c.odd() ? "odd" : "even";
    out.json["ring"] = u.ring.spec();
    out.json["arity"] = u.arity;
    out.json["word_length"] = u.word_length;
    out.json["cobar"] = to_json(u.cobar);
    out.json["bar"] = u.bar_ok;
    const bool ok = u.cobar.ok && u.bar_ok;
    out.json["ok"] = ok;
    out.text << "coefficients: " << u.ring.spec() << "\n"
             << "m*∘m* = 0 (words <= " << u.word_length << "): " << pass(u.cobar.ok) << "\n"
             << "bar side (arities <= " << u.bar_arity << "): " << pass(u.bar_ok) << "\n"
             << "m∘m = 0: " << pass(ok) << "\n";
    out.status = ok ? 0 : 1;
}

void cmd_normalize_cochain(const Context& c, Output& out) {
    const MooreAlgebra m = c.algebra();
    const GradedBasis basis = GradedBasis::two_cell(m.d);
    Cochain cochain;
    if (!c.opts().cochain.empty()) {
        cochain = with_flag("--cochain", "", [&] {
            Json j;
            try {
                j = Json::parse(c.opts().cochain);
            } catch (const nlohmann::json::parse_error& e) {
                throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
            }
            return cochain_from_json(j, basis);
        });
        if (cochain.ring() != m.ring())
            throw Error(ErrorCode::IncompatibleRing, "cochain over " + cochain.ring().spec() + ", structure over " +
                                                         m.ring().spec());
    } else {
        std::mt19937_64 rng(c.opts().seed);
        const int upto = std::max(1, c.opts().arity);
        cochain = gen::random_cochain(m.ring(), basis, static_cast<int>(c.opts().seed & 1), 1, upto,
                                      2 * upto + 4, rng);
    }
    const int upto = std::max(cochain.max_arity(), 1);
    const int bound = std::max(cochain.bound(), 2 * upto + 4);
    const AInfStructure structure = moore_structure(m, std::min(bound, m.trunc()));
    const NormalizationResult r = normalize_cochain(cochain, structure, upto);
    const bool normalized = is_normalized(r.normalized.truncated(upto));
    const bool identity =
        (cochain - r.normalized).agrees_with(hochschild_differential(r.homotopy, structure) + r.defect);
    out.json["input"] = to_json(cochain);
    out.json["normalized"] = to_json(r.normalized);
    out.json["homotopy"] = to_json(r.homotopy);
    out.json["defect"] = to_json(r.defect);
    out.json["steps"] = r.steps;
    out.json["is_normalized"] = normalized;
    out.json["identity"] = identity;
    out.text << "input:      " << cochain.str() << "\n"
             << "normalized: " << r.normalized.str() << "\n"
             << "homotopy:   " << r.homotopy.str() << "\n"
             << "defect:     " << r.defect.str() << "\n"
             << "normalized on arities <= " << upto << ": " << pass(normalized) << "\n"
             << "c - N = dH + K: " << pass(identity) << "\n";
    if (!normalized || !identity) throw std::logic_error("normalization retraction failed its own check");
}

void cmd_audit(const Context& c, Output& out) {
    const MooreAlgebra m = c.algebra();
    const auto violations = degree_audit(m);
    describe(out, m);
    Json list = Json::array();
    for (const auto& v : violations) list.push_back(to_json(v));
    out.json["violations"] = list;
    if (!m.ring().laurent()) out.text << "no Laurent variable: integer degrees are not tracked\n";
    for (const auto& v : violations)
        out.text << v.name << ": expected degree " << v.expected << ", found "
                 << (v.actual ? std::to_string(*v.actual) : std::string("inhomogeneous")) << " (" << v.coefficient
                 << ")\n";
    if (m.ring().laurent() && violations.empty()) out.text << "all coefficients have the expected degrees\n";
    if (m.is_even()) {
        out.json["hh_generator_degrees"] = Json{{"z", -m.d - 1}, {"t", -m.d - 2}};
        out.text << "HH generators: z in degree " << -m.d - 1 << ", t in degree " << -m.d - 2 << "\n";
    }
}

void cmd_selftest(const Context& c, Output& out) {
    Json results = Json::array();
    bool all = true;
    for (const auto& info : suite_list()) {
        if (c.opts().suite != 0 && c.opts().suite != info.id) continue;
        const SuiteResult r = run_suite(info.id, c.opts().seed);
        all = all && r.passed;
        results.push_back(Json{{"id", r.id},
                               {"name", r.name},
                               {"passed", r.passed},
                               {"cases", r.cases},
                               {"detail", r.detail},
                               {"seconds", r.seconds}});
        out.text << "[" << pass(r.passed) << "] " << std::setw(2) << r.id << " " << r.name << ": " << r.detail
                 << " (" << std::fixed << std::setprecision(2) << r.seconds << " s)\n";
    }
    if (results.empty()) throw Error(ErrorCode::InvalidArgument, "no suite " + std::to_string(c.opts().suite));
    out.json["seed"] = c.opts().seed;
    out.json["suites"] = results;
    out.json["passed"] = all;
    out.status = all ? 0 : 1;
}

void print_argument_error(const ArgumentError& e) {
    std::cerr << "moore: parse error in " << e.flag << ": " << e.error.what() << "\n";
    if (!e.text.empty() && e.text.find('\n') == std::string::npos && e.error.position() <= e.text.size())
        std::cerr << "  " << e.text << "\n  " << std::string(e.error.position(), ' ') << "^\n";
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    if (const char* env = std::getenv("MOORE_DEFAULT_TRUNC")) {
        const std::string text(env);
        std::size_t used = 0;
        long value = -1;
        try {
            value = std::stol(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (text.empty() || used != text.size() || value < 0 || value > 4096) {
            std::cerr << "moore: parse error in MOORE_DEFAULT_TRUNC: expected an integer in 0..4096 at position "
                      << used << "\n  " << text << "\n  " << std::string(used, ' ') << "^\n";
            return 2;
        }
        o.trunc = static_cast<int>(value);
    }
    CLI::App app{"Moore A-infinity algebras: structures, normal forms and Hochschild cohomology", "moore"};
    app.set_config("--config", "", "Read options from a TOML/INI file (same keys as the flags)");
    app.require_subcommand(1);
    app.add_option("--ring", o.ring, "Coefficient ring: Q, F<p>, Zp:<p>:<K>, optional [v]")->capture_default_str();
    app.add_option("--trunc", o.trunc, "Truncation N (word length for verify-universal)")
        ->capture_default_str()
        ->check(CLI::Range(0, 4096));
    app.add_flag("--json", o.json, "Machine-readable output");
    app.add_option("--seed", o.seed, "Seed for randomized verbs")->capture_default_str();
    app.add_option("--parity", o.parity, "even or odd")->capture_default_str();
    app.add_option("--d", o.d, "Degree of the top cell (default 0 even, 1 odd)")->check(CLI::Range(0, 1000));
    app.add_option("--arity", o.arity, "Arity bound / number of formal coefficients")
        ->capture_default_str()
        ->check(CLI::Range(1, 30));
    app.add_option("--length", o.length, "Word-length truncation for check (default: N)")->check(CLI::Range(1, 30));
    app.add_option("--maxdeg", o.maxdeg, "Also run the brute-force Hochschild computation to this degree")
        ->check(CLI::Range(0, 30));
    app.add_option("--suite", o.suite, "Run a single selftest suite");
    app.add_option("--series", o.series, "Series u (text or JSON)");
    app.add_option("--other", o.other, "Second series for equivalent");
    app.add_option("--by", o.by, "Automorphism F for act");
    app.add_option("--a", o.a, "Odd case: series A");
    app.add_option("--b", o.b, "Odd case: series B");
    app.add_option("--g", o.g, "Odd case: series G");
    app.add_option("--v", o.v, "Odd structure: series v");
    app.add_option("--w", o.w, "Odd structure: series w");
    app.add_option("--cochain", o.cochain, "Cochain JSON for normalize-cochain");

    using Verb = void (*)(const Context&, Output&);
    const std::vector<std::tuple<std::string, std::string, Verb>> verbs = {
        {"check", "Square-zero, Stasheff and unitality checks of a structure", cmd_check},
        {"act", "Act on a structure by a normalized automorphism", cmd_act},
        {"height", "Height of a characteristic series", cmd_height},
        {"canonicalize", "Canonical form and witness", cmd_canonicalize},
        {"invariant", "Orbit invariant over a graded field", cmd_invariant},
        {"equivalent", "Weak equivalence of two even structures", cmd_equivalent},
        {"hochschild", "Hochschild cohomology report", cmd_hochschild},
        {"verify-universal", "Square-zero check with formal coefficients", cmd_verify_universal},
        {"normalize-cochain", "Retract a Hochschild cochain onto normalized cochains", cmd_normalize_cochain},
        {"audit", "Integer degree audit of the coefficients", cmd_audit},
        {"selftest", "Run the seeded property suites", cmd_selftest},
    };
    Verb chosen = nullptr;
    for (const auto& [name, help, fn] : verbs) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        sub->callback([&chosen, fn = fn] { chosen = fn; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "moore: parse error: " << e.what() << "\n";
        return 2;
    }

    Output out;
    try {
        Context ctx(o);
        chosen(ctx, out);
    } catch (const ArgumentError& e) {
        print_argument_error(e);
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "moore: parse error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "moore: " << e.name() << ": " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "moore: internal error: " << e.what() << "\n";
        return 4;
    }
    if (o.json) std::cout << out.json.dump(2) << "\n";
    else std::cout << out.text.str();
    return out.status;
}
