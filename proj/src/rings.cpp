#include "moore/rings.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

namespace moore {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::IncompatibleRing: return "IncompatibleRing";
        case ErrorCode::NotAUnit: return "NotAUnit";
        case ErrorCode::NoUniformizer: return "NoUniformizer";
        case ErrorCode::CompositionUndefined: return "CompositionUndefined";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::HeightUndefined: return "HeightUndefined";
        case ErrorCode::RankUndetermined: return "RankUndetermined";
        case ErrorCode::ParityMismatch: return "ParityMismatch";
        case ErrorCode::UnsupportedCase: return "UnsupportedCase";
        case ErrorCode::WildCase: return "WildCase";
        case ErrorCode::NeedsHigherPrecision: return "NeedsHigherPrecision";
        case ErrorCode::ZeroDivisor: return "ZeroDivisor";
        case ErrorCode::NonFieldRing: return "NonFieldRing";
        case ErrorCode::BasisMismatch: return "BasisMismatch";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Parse: return "ParseError";
    }
    return "Unknown";
}

struct RingData {
    RingKind kind = RingKind::Rationals;
    long p = 0;
    int K = 0;
    bool laurent = false;
    std::vector<std::string> symbols;
    mpz_class modulus = 0;

    auto key() const { return std::tie(kind, p, K, laurent, symbols); }
};

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    mpz_class z = p;
    return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

const RingData& data_of(const Ring& r) {
    if (!r.valid()) throw Error(ErrorCode::IncompatibleRing, "element has no ring");
    return *r.data();
}

// Brings a scalar into canonical form for the ring (exact rational for Q,
// representative in [0, m) otherwise).
void normalize_scalar(const RingData& d, mpq_class& q) {
    if (d.kind == RingKind::Rationals) {
        q.canonicalize();
        return;
    }
    mpz_class num = q.get_num();
    mpz_class den = q.get_den();
    mpz_class r;
    mpz_mod(r.get_mpz_t(), num.get_mpz_t(), d.modulus.get_mpz_t());
    if (den != 1) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), d.modulus.get_mpz_t());
        if (g != 1) {
            throw Error(ErrorCode::NotAUnit,
                        "denominator " + den.get_str() + " is not invertible modulo " +
                            d.modulus.get_str());
        }
        r = r * mod_inverse(den, d.modulus);
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), d.modulus.get_mpz_t());
    }
    q = mpq_class(r);
}

int padic_order(mpz_class x, long p, int cap) {
    if (x == 0) return cap;
    int v = 0;
    mpz_class pz = p;
    while (v < cap && mpz_divisible_p(x.get_mpz_t(), pz.get_mpz_t())) {
        x /= pz;
        ++v;
    }
    return v;
}

Monomial add_mono(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

bool mono_is_one(const Monomial& m) {
    return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

// True when the monomial only involves v (no polynomial indeterminates).
bool mono_is_v_only(const Monomial& m, bool laurent) {
    for (std::size_t i = laurent ? 1 : 0; i < m.size(); ++i)
        if (m[i] != 0) return false;
    return true;
}

}  // namespace

mpz_class mod_inverse(const mpz_class& x, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0)
        throw Error(ErrorCode::NotAUnit, x.get_str() + " is not invertible modulo " + m.get_str());
    return r;
}

// ---------------------------------------------------------------------------
// Ring

Ring Ring::intern(RingData proto) {
    static std::mutex mu;
    static std::vector<std::unique_ptr<RingData>> table;
    std::lock_guard<std::mutex> lock(mu);
    for (const auto& d : table)
        if (d->key() == proto.key()) return Ring(d.get());
    table.push_back(std::make_unique<RingData>(std::move(proto)));
    return Ring(table.back().get());
}

Ring Ring::rationals(bool laurent) {
    RingData d;
    d.kind = RingKind::Rationals;
    d.laurent = laurent;
    return intern(std::move(d));
}

Ring Ring::prime_field(long p, bool laurent) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    RingData d;
    d.kind = RingKind::PrimeField;
    d.p = p;
    d.laurent = laurent;
    d.modulus = p;
    return intern(std::move(d));
}

Ring Ring::truncated_padic(long p, int precision, bool laurent) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    if (precision < 1 || precision > 4096)
        throw Error(ErrorCode::InvalidArgument, "p-adic precision must be in 1..4096");
    RingData d;
    d.kind = RingKind::TruncatedPadic;
    d.p = p;
    d.K = precision;
    d.laurent = laurent;
    mpz_ui_pow_ui(d.modulus.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(precision));
    return intern(std::move(d));
}

Ring Ring::with_symbols(std::vector<std::string> names) const {
    RingData d = data_of(*this);
    d.symbols = std::move(names);
    return intern(std::move(d));
}

Ring Ring::without_symbols() const { return with_symbols({}); }

Ring Ring::without_laurent() const {
    RingData d = data_of(*this);
    d.laurent = false;
    return intern(std::move(d));
}

Ring Ring::residue_ring() const {
    const RingData& src = data_of(*this);
    if (src.kind != RingKind::TruncatedPadic) return *this;
    RingData d = src;
    d.kind = RingKind::PrimeField;
    d.K = 0;
    d.modulus = d.p;
    return intern(std::move(d));
}

RingKind Ring::kind() const { return data_of(*this).kind; }
long Ring::prime() const { return data_of(*this).p; }
int Ring::precision() const { return data_of(*this).K; }
bool Ring::laurent() const { return data_of(*this).laurent; }
const std::vector<std::string>& Ring::symbols() const { return data_of(*this).symbols; }
std::size_t Ring::monomial_size() const {
    const auto& d = data_of(*this);
    return (d.laurent ? 1 : 0) + d.symbols.size();
}
const mpz_class& Ring::modulus() const { return data_of(*this).modulus; }
long Ring::characteristic() const {
    const auto& d = data_of(*this);
    return d.kind == RingKind::PrimeField ? d.p : 0;
}

bool Ring::is_graded_field() const {
    const auto& d = data_of(*this);
    return d.kind != RingKind::TruncatedPadic && d.symbols.empty();
}

bool Ring::is_field() const { return is_graded_field() && !laurent(); }

std::string Ring::spec() const {
    const auto& d = data_of(*this);
    std::string s;
    switch (d.kind) {
        case RingKind::Rationals: s = "Q"; break;
        case RingKind::PrimeField: s = "F" + std::to_string(d.p); break;
        case RingKind::TruncatedPadic:
            s = "Zp:" + std::to_string(d.p) + ":" + std::to_string(d.K);
            break;
    }
    if (d.laurent) s += "[v]";
    if (!d.symbols.empty()) {
        s += "{";
        for (std::size_t i = 0; i < d.symbols.size(); ++i) s += (i ? "," : "") + d.symbols[i];
        s += "}";
    }
    return s;
}

Ring Ring::parse(std::string_view spec) {
    std::string s(spec);
    std::vector<std::string> symbols;
    if (!s.empty() && s.back() == '}') {
        const auto open = s.find('{');
        if (open == std::string::npos) throw ParseError("unbalanced '}' in ring spec '" + s + "'", s.size() - 1);
        std::string list = s.substr(open + 1, s.size() - open - 2);
        std::size_t start = 0;
        while (true) {
            const auto comma = list.find(',', start);
            std::string name = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            const bool ident = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') &&
                               std::all_of(name.begin(), name.end(),
                                           [](unsigned char c) { return std::isalnum(c) || c == '_'; });
            if (!ident || name == "t" || name == "v" ||
                std::find(symbols.begin(), symbols.end(), name) != symbols.end())
                throw ParseError("bad indeterminate '" + name + "' in ring spec", open + 1 + start);
            symbols.push_back(name);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        s.resize(open);
        return parse(s).with_symbols(symbols);
    }
    bool laurent = false;
    if (s.size() >= 3 && s.substr(s.size() - 3) == "[v]") {
        laurent = true;
        s.resize(s.size() - 3);
    }
    auto parse_long = [&](const std::string& text, std::size_t pos) -> long {
        if (text.empty() || !std::all_of(text.begin(), text.end(), ::isdigit))
            throw ParseError("expected a positive integer in ring spec '" + std::string(spec) + "'",
                             pos);
        if (text.size() > 9)
            throw ParseError("integer too large in ring spec '" + std::string(spec) + "'", pos);
        return std::stol(text);
    };
    if (s == "Q") return rationals(laurent);
    if (!s.empty() && s[0] == 'F') return prime_field(parse_long(s.substr(1), 1), laurent);
    if (s.rfind("Zp:", 0) == 0) {
        auto colon = s.find(':', 3);
        if (colon == std::string::npos)
            throw ParseError("expected Zp:<p>:<K> in ring spec '" + std::string(spec) + "'", 3);
        long p = parse_long(s.substr(3, colon - 3), 3);
        long k = parse_long(s.substr(colon + 1), colon + 1);
        return truncated_padic(p, static_cast<int>(k), laurent);
    }
    throw ParseError("unknown ring spec '" + std::string(spec) + "'", 0);
}

RingElem Ring::zero() const { return RingElem::from_terms(*this, {}); }

RingElem Ring::one() const { return from_int(1); }

RingElem Ring::from_int(long n) const { return from_rational(mpq_class(n)); }

RingElem Ring::from_mpz(const mpz_class& n) const { return from_rational(mpq_class(n)); }

RingElem Ring::from_rational(const mpq_class& q) const {
    return RingElem::from_terms(*this, {RingElem::Term{Monomial(monomial_size(), 0), q}});
}

RingElem Ring::v_power(int k) const {
    if (!laurent()) {
        if (k == 0) return one();
        throw Error(ErrorCode::InvalidArgument, "ring " + spec() + " has no Laurent variable v");
    }
    Monomial m(monomial_size(), 0);
    m[0] = k;
    return RingElem::from_terms(*this, {RingElem::Term{m, mpq_class(1)}});
}

RingElem Ring::symbol(std::size_t index) const {
    if (index >= symbols().size())
        throw Error(ErrorCode::InvalidArgument, "symbol index out of range");
    Monomial m(monomial_size(), 0);
    m[(laurent() ? 1 : 0) + index] = 1;
    return RingElem::from_terms(*this, {RingElem::Term{m, mpq_class(1)}});
}

RingElem Ring::uniformizer() const {
    if (!has_uniformizer())
        throw Error(ErrorCode::NoUniformizer, "ring " + spec() + " has no uniformizer");
    return from_int(prime());
}

// ---------------------------------------------------------------------------
// RingElem

RingElem RingElem::from_terms(Ring ring, std::vector<Term> terms) {
    RingElem r;
    r.ring_ = ring;
    r.terms_ = std::move(terms);
    r.normalize();
    return r;
}

void RingElem::normalize() {
    const RingData& d = data_of(ring_);
    for (auto& t : terms_) {
        if (t.mono.size() != ring_.monomial_size())
            throw Error(ErrorCode::IncompatibleRing, "monomial arity does not match ring");
        normalize_scalar(d, t.coeff);
    }
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.mono < b.mono; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().mono == t.mono) {
            merged.back().coeff += t.coeff;
            normalize_scalar(d, merged.back().coeff);
        } else {
            merged.push_back(std::move(t));
        }
    }
    std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
    terms_ = std::move(merged);
}

void RingElem::adopt_ring(const RingElem& other) {
    if (!other.ring_.valid()) return;
    if (!ring_.valid()) {
        ring_ = other.ring_;
        return;
    }
    if (ring_ != other.ring_)
        throw Error(ErrorCode::IncompatibleRing,
                    "incompatible rings " + ring_.spec() + " and " + other.ring_.spec());
}

bool RingElem::is_one() const {
    return terms_.size() == 1 && mono_is_one(terms_[0].mono) && terms_[0].coeff == 1;
}

mpq_class RingElem::constant_coeff() const {
    for (const auto& t : terms_)
        if (mono_is_one(t.mono)) return t.coeff;
    return 0;
}

RingElem& RingElem::operator+=(const RingElem& b) {
    adopt_ring(b);
    if (b.terms_.empty()) return *this;
    const RingData& d = data_of(ring_);
    std::vector<Term> out;
    out.reserve(terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < b.terms_.size()) {
        if (j == b.terms_.size() || (i < terms_.size() && terms_[i].mono < b.terms_[j].mono)) {
            out.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || b.terms_[j].mono < terms_[i].mono) {
            out.push_back(b.terms_[j++]);
        } else {
            Term t{std::move(terms_[i].mono), terms_[i].coeff + b.terms_[j].coeff};
            normalize_scalar(d, t.coeff);
            if (t.coeff != 0) out.push_back(std::move(t));
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

RingElem RingElem::operator-() const {
    RingElem r = *this;
    if (!r.ring_.valid()) return r;
    const RingData& d = data_of(ring_);
    for (auto& t : r.terms_) {
        t.coeff = -t.coeff;
        normalize_scalar(d, t.coeff);
    }
    return r;
}

RingElem& RingElem::operator-=(const RingElem& b) { return *this += -b; }

RingElem operator*(const RingElem& a, const RingElem& b) {
    RingElem r;
    r.ring_ = a.ring_;
    r.adopt_ring(b);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    const RingData& d = data_of(r.ring_);
    if (a.terms_.size() == 1 && b.terms_.size() == 1) {
        RingElem::Term t{add_mono(a.terms_[0].mono, b.terms_[0].mono),
                         a.terms_[0].coeff * b.terms_[0].coeff};
        normalize_scalar(d, t.coeff);
        if (t.coeff != 0) r.terms_.push_back(std::move(t));
        return r;
    }
    std::map<Monomial, mpq_class> acc;
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) acc[add_mono(x.mono, y.mono)] += x.coeff * y.coeff;
    for (auto& [m, c] : acc) {
        normalize_scalar(d, c);
        if (c != 0) r.terms_.push_back(RingElem::Term{m, c});
    }
    return r;
}

RingElem& RingElem::operator*=(const RingElem& b) { return *this = *this * b; }

RingElem operator*(const RingElem& a, long n) {
    RingElem r = a;
    if (!r.ring_.valid()) return r;
    const RingData& d = data_of(r.ring_);
    for (auto& t : r.terms_) {
        t.coeff *= n;
        normalize_scalar(d, t.coeff);
    }
    std::erase_if(r.terms_, [](const RingElem::Term& t) { return t.coeff == 0; });
    return r;
}

bool operator==(const RingElem& a, const RingElem& b) {
    if (a.ring_.valid() && b.ring_.valid() && a.ring_ != b.ring_)
        throw Error(ErrorCode::IncompatibleRing,
                    "comparing elements of " + a.ring_.spec() + " and " + b.ring_.spec());
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff)
            return false;
    return true;
}

RingElem RingElem::pow(unsigned e) const {
    RingElem result = ring_.one();
    RingElem base = *this;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return result;
}

std::optional<int> RingElem::degree() const {
    if (terms_.empty()) return std::nullopt;
    if (!ring_.laurent()) return 0;
    int k = terms_.front().mono[0];
    for (const auto& t : terms_)
        if (t.mono[0] != k) return std::nullopt;
    return 2 * k;
}

std::string RingElem::str() const {
    if (terms_.empty()) return "0";
    const bool laurent = ring_.laurent();
    const auto& syms = ring_.symbols();
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        mpq_class c = t.coeff;
        bool negative = c < 0;
        if (negative) c = -c;
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        std::vector<std::string> factors;
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            int e = t.mono[i];
            if (e == 0) continue;
            std::string name = (laurent && i == 0) ? "v" : syms[i - (laurent ? 1 : 0)];
            factors.push_back(e == 1 ? name : name + "^" + std::to_string(e));
        }
        std::string body;
        for (std::size_t i = 0; i < factors.size(); ++i) body += (i ? "*" : "") + factors[i];
        if (body.empty()) {
            os << c.get_str();
        } else if (c == 1) {
            os << body;
        } else {
            os << c.get_str() << "*" << body;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// units, valuations, reductions

namespace {

// Index of the unique term whose coefficient is a unit of the scalar ring,
// provided every other term is "small" (divisible by p in Z/p^K, absent in a
// field). Returns -1 if the element is not a unit.
int unit_leading_term(const RingElem& a) {
    const Ring r = a.ring();
    if (a.is_zero() || !r.valid()) return -1;
    const auto& terms = a.terms();
    if (r.kind() == RingKind::TruncatedPadic) {
        int found = -1;
        mpz_class p = r.prime();
        for (std::size_t i = 0; i < terms.size(); ++i) {
            mpz_class num = terms[i].coeff.get_num();
            if (!mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t())) {
                if (found >= 0) return -1;
                found = static_cast<int>(i);
            }
        }
        if (found < 0 || !mono_is_v_only(terms[found].mono, r.laurent())) return -1;
        return found;
    }
    if (terms.size() != 1 || !mono_is_v_only(terms[0].mono, r.laurent())) return -1;
    return 0;
}

RingElem invert_term(Ring r, const RingElem::Term& t) {
    mpq_class c;
    if (r.kind() == RingKind::Rationals) {
        c = 1 / t.coeff;
    } else {
        c = mpq_class(mod_inverse(t.coeff.get_num(), r.modulus()));
    }
    Monomial m(t.mono.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = -t.mono[i];
    return RingElem::from_terms(r, {RingElem::Term{m, c}});
}

}  // namespace

bool is_unit(const RingElem& a) { return unit_leading_term(a) >= 0; }

RingElem inverse(const RingElem& a) {
    int lead = unit_leading_term(a);
    if (lead < 0) throw Error(ErrorCode::NotAUnit, a.str() + " is not a unit");
    const Ring r = a.ring();
    RingElem lead_inv = invert_term(r, a.terms()[lead]);
    if (r.kind() != RingKind::TruncatedPadic) return lead_inv;
    // a = lead * (1 + n) with n nilpotent (n^K = 0)
    RingElem n = a * lead_inv - r.one();
    RingElem sum = r.one();
    RingElem power = r.one();
    for (int j = 1; j < r.precision(); ++j) {
        power = power * (-n);
        if (power.is_zero()) break;
        sum += power;
    }
    return lead_inv * sum;
}

int valuation(const RingElem& a) {
    const Ring r = a.ring();
    if (!r.valid() || !r.has_uniformizer())
        throw Error(ErrorCode::NoUniformizer,
                    "valuation needs a ring with a uniformizer, got " +
                        (r.valid() ? r.spec() : std::string("<none>")));
    int v = r.precision();
    for (const auto& t : a.terms())
        v = std::min(v, padic_order(t.coeff.get_num(), r.prime(), r.precision()));
    return v;
}

RingElem divide_by_uniformizer(const RingElem& a) {
    if (valuation(a) < 1)
        throw Error(ErrorCode::NotAUnit, a.str() + " is not divisible by the uniformizer");
    const Ring r = a.ring();
    std::vector<RingElem::Term> terms;
    for (const auto& t : a.terms()) terms.push_back({t.mono, mpq_class(t.coeff.get_num() / r.prime())});
    return RingElem::from_terms(r, std::move(terms));
}

bool is_regular(const RingElem& a) {
    if (a.is_zero()) return false;
    if (a.ring().has_uniformizer()) return valuation(a) < a.ring().precision();
    return true;
}

RingElem reduce_to_residue(const RingElem& a) {
    const Ring r = a.ring();
    if (!r.valid() || r.kind() != RingKind::TruncatedPadic) return a;
    std::vector<RingElem::Term> terms(a.terms().begin(), a.terms().end());
    return RingElem::from_terms(r.residue_ring(), std::move(terms));
}

RingElem specialize_v(const RingElem& a) {
    const Ring r = a.ring();
    if (!r.valid() || !r.laurent()) return a;
    std::vector<RingElem::Term> terms;
    for (const auto& t : a.terms()) terms.push_back({Monomial(t.mono.begin() + 1, t.mono.end()), t.coeff});
    return RingElem::from_terms(r.without_laurent(), std::move(terms));
}

}  // namespace moore
