#include "moore/moduli.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace moore {

namespace {

void require_parity(const PowerSeries& s, int parity, const char* name) {
    for (int i = 0; i <= s.trunc(); ++i)
        if ((i & 1) != parity && !s.coeff(i).is_zero())
            throw Error(ErrorCode::ParityMismatch,
                        std::string(name) + " must only involve " + (parity ? "odd" : "even") + " powers of t");
}

// Odd derivation B(t) d_t on series in a single odd variable:
// t^n -> B t^{n-1} for odd n, 0 for even n.
PowerSeries odd_derivation(const PowerSeries& b, const PowerSeries& x) {
    PowerSeries dx(x.ring(), std::max(x.trunc() - 1, 0));
    for (int n = 1; n <= x.trunc(); n += 2) dx.set_coeff(n - 1, x.coeff(n));
    return b * dx;
}

std::map<mpz_class, int> factor(mpz_class n) {
    std::map<mpz_class, int> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    for (unsigned long p = 2; p < 1000 && p * p <= n; ++p) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++out[mpz_class(p)];
            n /= p;
        }
    }
    std::vector<mpz_class> stack{n};
    std::mt19937_64 rng(0x6d6f6f7265ULL);
    while (!stack.empty()) {
        mpz_class m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (mpz_probab_prime_p(m.get_mpz_t(), 40)) {
            ++out[m];
            continue;
        }
        // Pollard rho
        mpz_class d = m;
        while (d == m) {
            mpz_class x = static_cast<unsigned long>(rng() % 1000003 + 2), y = x, c = static_cast<unsigned long>(rng() % 1000003 + 1);
            d = 1;
            while (d == 1) {
                x = (x * x + c) % m;
                y = (y * y + c) % m;
                y = (y * y + c) % m;
                mpz_class diff = abs(x - y);
                mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
            }
        }
        stack.push_back(d);
        stack.push_back(m / d);
    }
    return out;
}

mpz_class pow_mod(const mpz_class& b, const mpz_class& e, const mpz_class& m) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

mpq_class rational_power_class(const mpq_class& c, int n) {
    mpq_class rep = 1;
    for (auto [p, e] : factor(c.get_num())) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e % n));
        rep *= pe;
    }
    for (auto [p, e] : factor(c.get_den())) {
        int r = ((-e) % n + n) % n;
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(r));
        rep *= pe;
    }
    // -1 = (-1)^n is an n-th power when n is odd
    if (c < 0 && n % 2 == 0) rep = -rep;
    return rep;
}

long prime_field_power_class(long c, long p, int n) {
    const long g = std::gcd(static_cast<long>(n), p - 1);
    const mpz_class e = (p - 1) / g;
    const mpz_class pm = p;
    for (long a = 1; a < p; ++a) {
        // c/a lies in the subgroup of n-th powers iff (c/a)^{(p-1)/g} = 1
        mpz_class ratio = (mpz_class(c) * mod_inverse(a, pm)) % pm;
        if (pow_mod(ratio, e, pm) == 1) return a;
    }
    throw Error(ErrorCode::NotAUnit, "zero has no power class");
}

bool field_like(const Ring& r) { return r.is_graded_field(); }

}  // namespace

// ---------------------------------------------------------------------------

MooreAlgebra MooreAlgebra::even(PowerSeries u, int d) {
    if (d % 2 != 0) throw Error(ErrorCode::InvalidArgument, "even Moore algebras need even d");
    if (!u.coeff(0).is_zero()) throw Error(ErrorCode::InvalidArgument, "characteristic series must have u(0) = 0");
    MooreAlgebra m;
    m.variant = Variant::Even;
    m.d = d;
    m.u = std::move(u);
    return m;
}

MooreAlgebra MooreAlgebra::odd(PowerSeries v, PowerSeries w, int d) {
    if (d % 2 == 0) throw Error(ErrorCode::InvalidArgument, "odd Moore algebras need odd d");
    if (v.ring() != w.ring()) throw Error(ErrorCode::IncompatibleRing, "v and w over different rings");
    require_parity(v, 0, "v(t)");
    require_parity(w, 0, "w(t)");
    if (!v.coeff(0).is_zero() || !w.coeff(0).is_zero())
        throw Error(ErrorCode::InvalidArgument, "structure series must have zero constant term");
    MooreAlgebra m;
    m.variant = Variant::Odd;
    m.d = d;
    m.v = std::move(v);
    m.w = std::move(w);
    return m;
}

Derivation moore_mstar(const MooreAlgebra& m, int maxlen) {
    return m.is_even() ? mstar_even(m.u, maxlen) : mstar_odd(m.v, m.w, maxlen);
}

MooreAlgebra act(const MooreAlgebra& m, const PowerSeries& f) {
    if (!m.is_even()) throw Error(ErrorCode::UnsupportedCase, "act is defined for even algebras; use act_full");
    if (f.trunc() < 1 || !f.coeff(0).is_zero() || !is_unit(f.coeff(1)))
        throw Error(ErrorCode::NotInvertible, "automorphism " + f.str() + " is not invertible");
    return MooreAlgebra::even(compose(m.u, f), m.d);
}

std::pair<PowerSeries, PowerSeries> act_full(const PowerSeries& a, const PowerSeries& b, const PowerSeries& g,
                                             const PowerSeries& f) {
    require_parity(a, 0, "A(t)");
    require_parity(b, 0, "B(t)");
    require_parity(g, 1, "G(t)");
    require_parity(f, 1, "F(t)");
    if (f.trunc() < 1 || !is_unit(f.coeff(1)))
        throw Error(ErrorCode::NotInvertible, "F(t) has non-unit linear coefficient");
    const PowerSeries f_inv = reversion(f);
    const PowerSeries g_tilde = compose(g, f_inv);
    PowerSeries a_new = compose(a, f) - g * g - compose(odd_derivation(b, g_tilde), f);
    const PowerSeries t = PowerSeries::identity(g.ring(), g.trunc());
    PowerSeries b_new = g.ring().from_int(2) * (g * t) + compose(odd_derivation(b, f_inv), f);
    return {a_new, b_new};
}

// ---------------------------------------------------------------------------
// invariants

RingElem nth_power_class(const RingElem& c, int n) {
    const Ring r = c.ring();
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "exponent must be positive");
    if (!r.valid() || !field_like(r))
        throw Error(ErrorCode::UnsupportedCase, "power classes are only decided over Q and F_p");
    if (r.characteristic() != 0 && n % r.characteristic() == 0)
        throw Error(ErrorCode::UnsupportedCase,
                    "characteristic " + std::to_string(r.characteristic()) + " divides " + std::to_string(n));
    if (!is_unit(c)) throw Error(ErrorCode::NotAUnit, c.str() + " is not a unit");
    const RingElem::Term& term = c.terms().front();
    mpq_class scalar = r.kind() == RingKind::Rationals
                           ? rational_power_class(term.coeff, n)
                           : mpq_class(prime_field_power_class(term.coeff.get_num().get_si(), r.prime(), n));
    RingElem rep = r.from_rational(scalar);
    if (r.laurent()) rep *= r.v_power(((term.mono[0] % n) + n) % n);
    return rep;
}

std::string OrbitInvariant::str() const {
    return "(" + std::to_string(n) + ", " + representative.str() + " mod " + std::to_string(n) + "-th powers)";
}

OrbitInvariant orbit_invariant(const MooreAlgebra& m) {
    if (!m.is_even()) throw Error(ErrorCode::UnsupportedCase, "odd-case classification is not available");
    int n = height(m.u);
    return OrbitInvariant{n, nth_power_class(m.u.coeff(n), n)};
}

// ---------------------------------------------------------------------------
// canonical forms

std::string CanonicalForm::kind_name() const {
    switch (kind) {
        case Kind::Trivial: return "trivial";
        case Kind::Canonical: return "canonical";
        case Kind::GradedFieldForm: return "graded-field";
    }
    return "?";
}

CanonicalForm canonicalize_char0(const PowerSeries& u) {
    const Ring r = u.ring();
    if (!field_like(r)) throw Error(ErrorCode::NonFieldRing, "canonicalize_char0 needs a graded field, got " + r.spec());
    const int n = height(u);
    if (r.characteristic() != 0 && n % r.characteristic() == 0)
        throw Error(ErrorCode::UnsupportedCase,
                    "characteristic " + std::to_string(r.characteristic()) + " divides the height " +
                        std::to_string(n));
    const int N = u.trunc();
    const RingElem lead = u.coeff(n);
    const RingElem denom_inv = inverse(lead * static_cast<long>(n));
    CanonicalForm out;
    out.kind = CanonicalForm::Kind::GradedFieldForm;
    out.n = n;
    PowerSeries cur = u;
    PowerSeries h_total = PowerSeries::identity(r, N);
    for (;;) {
        int k = -1;
        for (int i = n + 1; i <= cur.trunc(); ++i)
            if (!cur.coeff(i).is_zero()) {
                k = i;
                break;
            }
        if (k < 0) break;
        PowerSeries step = PowerSeries::identity(r, N);
        step.set_coeff(k - n + 1, -(cur.coeff(k) * denom_inv));
        cur = compose(cur, step);
        h_total = compose(h_total, step);
        ++out.steps;
    }
    out.form = cur;
    out.witness = h_total;
    out.normalized = cur;
    return out;
}

std::vector<int> canonical_form_precision(int k, int trunc, int ring_precision) {
    constexpr int kUnbounded = 1 << 20;
    const int K = ring_precision;
    // reach[j]: least pi-adic order of an error at degree j caused by the unknown tail
    std::vector<int> reach(trunc + k + 1, 0);
    for (int j = trunc; j >= 0; --j) {
        int best = kUnbounded;
        for (int d = std::max(j + 1, k + 1); d <= j + k - 1; ++d) best = std::min(best, reach[d]);
        reach[j] = best >= kUnbounded ? kUnbounded : best + 1;
    }
    std::vector<int> prec(k + 1, K);
    for (int j = 2; j <= k; ++j) prec[j] = std::min(K, reach[j]);
    prec[k] = std::min(prec[k], std::max(K - 1, 1));
    return prec;
}

namespace {

PowerSeries reduce_coefficients(const PowerSeries& form, const std::vector<int>& prec) {
    const Ring r = form.ring();
    PowerSeries out = form;
    for (int j = 0; j < static_cast<int>(prec.size()) && j <= form.trunc(); ++j) {
        if (prec[j] >= r.precision()) continue;
        mpz_class m;
        mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(r.prime()), static_cast<unsigned long>(prec[j]));
        std::vector<RingElem::Term> terms;
        for (const auto& t : form.coeff(j).terms()) {
            mpz_class c = t.coeff.get_num();
            mpz_class red;
            mpz_mod(red.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
            terms.push_back({t.mono, mpq_class(red)});
        }
        out.set_coeff(j, RingElem::from_terms(r, std::move(terms)));
    }
    return out;
}

}  // namespace

CanonicalForm canonicalize_dvr(const PowerSeries& u) {
    const Ring r = u.ring();
    if (!r.has_uniformizer()) throw Error(ErrorCode::NoUniformizer, "canonicalize_dvr needs Z/p^K, got " + r.spec());
    const int N = u.trunc();
    const int K = r.precision();
    if (N < 1 || !u.coeff(0).is_zero() || valuation(u.coeff(1)) != 1)
        throw Error(ErrorCode::InvalidArgument, "u_1 must be the uniformizer times a unit");

    CanonicalForm out;
    // u_1 = r pi: substitute t -> r^{-1} t
    const RingElem unit = divide_by_uniformizer(u.coeff(1));
    PowerSeries h_total = PowerSeries::monomial(r, N, inverse(unit), 1);
    PowerSeries cur = compose(u, h_total);

    int k = -1;
    for (int i = 2; i <= N; ++i) {
        const RingElem& c = cur.coeff(i);
        if (is_unit(c)) {
            k = i;
            break;
        }
        if (valuation(c) < 1)
            throw Error(ErrorCode::UnsupportedCase, "coefficient " + c.str() + " is neither a unit nor divisible by pi");
    }

    if (k < 0) {
        // all u_i divisible by pi: kill them one at a time with t -> t - (u_i / pi) t^i
        for (int i = 2; i <= N; ++i) {
            if (cur.coeff(i).is_zero()) continue;
            PowerSeries step = PowerSeries::identity(r, N);
            step.set_coeff(i, -divide_by_uniformizer(cur.coeff(i)));
            cur = compose(cur, step);
            h_total = compose(h_total, step);
            ++out.steps;
        }
        out.kind = CanonicalForm::Kind::Trivial;
        out.n = 1;
        out.form = cur;
        out.witness = h_total;
        out.normalized = cur;
        out.coefficient_precision.assign(2, K);
        return out;
    }
    if (k % r.prime() == 0)
        throw Error(ErrorCode::WildCase, "p = " + std::to_string(r.prime()) + " divides the canonical degree " +
                                             std::to_string(k));

    const RingElem denom_inv = inverse(cur.coeff(k) * static_cast<long>(k));
    for (;;) {
        // l(u): common pi-adic order of the coefficients above k
        int l = K;
        for (int i = k + 1; i <= N; ++i) l = std::min(l, valuation(cur.coeff(i)));
        if (l >= K) break;
        int s = k + 1;
        while (valuation(cur.coeff(s)) != l) ++s;
        PowerSeries step = PowerSeries::identity(r, N);
        step.set_coeff(s - k + 1, -(cur.coeff(s) * denom_inv));
        cur = compose(cur, step);
        h_total = compose(h_total, step);
        ++out.steps;
    }
    out.kind = CanonicalForm::Kind::Canonical;
    out.n = k;
    out.form = cur;
    out.witness = h_total;
    out.coefficient_precision = canonical_form_precision(k, N, K);
    out.normalized = reduce_coefficients(cur, out.coefficient_precision);
    return out;
}

CanonicalForm canonicalize(const PowerSeries& u) {
    return u.ring().has_uniformizer() ? canonicalize_dvr(u) : canonicalize_char0(u);
}

bool equivalent(const MooreAlgebra& a, const MooreAlgebra& b) {
    if (!a.is_even() || !b.is_even())
        throw Error(ErrorCode::UnsupportedCase, "equivalence is decided for even algebras only");
    if (a.ring() != b.ring())
        throw Error(ErrorCode::IncompatibleRing, "algebras over " + a.ring().spec() + " and " + b.ring().spec());
    const Ring r = a.ring();
    if (!r.has_uniformizer()) return orbit_invariant(a) == orbit_invariant(b);
    const int n = std::min(a.u.trunc(), b.u.trunc());
    CanonicalForm fa = canonicalize_dvr(a.u.truncated(n));
    CanonicalForm fb = canonicalize_dvr(b.u.truncated(n));
    return fa.kind == fb.kind && fa.n == fb.n && fa.normalized == fb.normalized;
}

std::vector<DegreeViolation> degree_audit(const MooreAlgebra& m) {
    std::vector<DegreeViolation> out;
    if (!m.ring().laurent()) return out;
    auto check = [&](const std::string& name, const RingElem& c, int expected) {
        if (c.is_zero()) return;
        std::optional<int> deg = c.degree();
        if (deg != expected) out.push_back(DegreeViolation{name, expected, deg, c.str()});
    };
    const int d = m.d;
    if (m.is_even()) {
        for (int i = 1; i <= m.u.trunc(); ++i) check("u" + std::to_string(i), m.u.coeff(i), i * (d + 2) - 2);
    } else {
        for (int i = 1; 2 * i <= m.v.trunc(); ++i)
            check("v" + std::to_string(i), m.v.coeff(2 * i), 2 * i * (d + 2) - d - 3);
        for (int i = 1; 2 * i <= m.w.trunc(); ++i)
            check("w" + std::to_string(i), m.w.coeff(2 * i), 2 * i * (d + 2) - 2);
    }
    return out;
}

}  // namespace moore
