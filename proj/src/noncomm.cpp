#include "moore/noncomm.hpp"

#include <algorithm>
#include <sstream>

namespace moore {

// ---------------------------------------------------------------------------
// Word

Word Word::t_power(int n) {
    if (n > kMaxLength) throw Error(ErrorCode::InvalidArgument, "word too long");
    return Word(n, n == 0 ? 0u : (n >= 32 ? ~0u : ((1u << n) - 1u)));
}

Word Word::parse(std::string_view letters) {
    if (letters.empty() || letters == "1") return Word();
    if (static_cast<int>(letters.size()) > kMaxLength)
        throw ParseError("word longer than " + std::to_string(kMaxLength), kMaxLength);
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        char c = letters[i];
        if (c != 'T' && c != 't') throw ParseError(std::string("unexpected letter '") + c + "'", i);
        bits = (bits << 1) | (c == 't' ? 1u : 0u);
    }
    return Word(static_cast<int>(letters.size()), bits);
}

Word Word::prefix(int n) const { return Word(n, n == 0 ? 0u : letters() >> (length() - n)); }

Word Word::suffix_from(int i) const {
    int n = length() - i;
    std::uint32_t mask = n == 0 ? 0u : (n >= 32 ? ~0u : ((1u << n) - 1u));
    return Word(n, letters() & mask);
}

Word operator*(Word a, Word b) {
    int n = a.length() + b.length();
    if (n > Word::kMaxLength) throw Error(ErrorCode::InvalidArgument, "word too long");
    std::uint32_t bits = b.length() >= 32 ? b.letters() : ((a.letters() << b.length()) | b.letters());
    return Word(n, bits);
}

std::string Word::str() const {
    if (length() == 0) return "1";
    std::string s;
    for (int i = 0; i < length(); ++i) s += letter_is_t(i) ? 't' : 'T';
    return s;
}

// ---------------------------------------------------------------------------
// NCSeries

namespace {

using TermMap = std::map<Word, RingElem>;

void accumulate(TermMap& m, Word w, const RingElem& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = m.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) m.erase(it);
    }
}

int min_length_of(const TermMap& m, int fallback) {
    int best = fallback;
    for (const auto& [w, c] : m) best = std::min(best, w.length());
    return best;
}

}  // namespace

NCSeries::NCSeries(Ring ring, int maxlen, bool t_odd) : ring_(ring), maxlen_(maxlen), t_odd_(t_odd) {
    if (maxlen < 0 || maxlen > Word::kMaxLength)
        throw Error(ErrorCode::InvalidArgument, "word-length truncation out of range");
}

NCSeries NCSeries::word(Ring ring, int maxlen, bool t_odd, Word w, const RingElem& c) {
    NCSeries s(ring, maxlen, t_odd);
    s.add_term(w, c);
    return s;
}

NCSeries NCSeries::tau(Ring ring, int maxlen, bool t_odd) {
    return word(ring, maxlen, t_odd, Word::tau(), ring.one());
}

NCSeries NCSeries::t(Ring ring, int maxlen, bool t_odd) {
    return word(ring, maxlen, t_odd, Word::t(), ring.one());
}

NCSeries NCSeries::from_series(const PowerSeries& u, int maxlen, bool t_odd) {
    NCSeries s(u.ring(), std::min(maxlen, u.trunc()), t_odd);
    for (int i = 0; i <= s.maxlen_; ++i) s.add_term(Word::t_power(i), u.coeff(i));
    return s;
}

RingElem NCSeries::coeff(Word w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? ring_.zero() : it->second;
}

void NCSeries::add_term(Word w, const RingElem& c) {
    if (w.length() > maxlen_) return;
    if (c.ring().valid() && c.ring() != ring_)
        throw Error(ErrorCode::IncompatibleRing, "coefficient ring does not match series ring");
    accumulate(terms_, w, c);
}

int NCSeries::min_length() const { return min_length_of(terms_, maxlen_ + 1); }

bool NCSeries::contains_tau() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first.contains_tau(); });
}

bool NCSeries::has_constant_term() const { return terms_.count(Word()) > 0; }

std::optional<int> NCSeries::parity() const {
    std::optional<int> p;
    for (const auto& [w, c] : terms_) {
        int q = w.parity(t_odd_);
        if (p && *p != q)
            throw Error(ErrorCode::ParityMismatch, "inhomogeneous element " + str());
        p = q;
    }
    return p;
}

bool NCSeries::is_homogeneous() const {
    try {
        parity();
        return true;
    } catch (const Error&) {
        return false;
    }
}

NCSeries NCSeries::truncated(int n) const {
    if (n >= maxlen_) return *this;
    NCSeries s(ring_, n, t_odd_);
    for (const auto& [w, c] : terms_)
        if (w.length() <= n) s.terms_.emplace(w, c);
    return s;
}

PowerSeries NCSeries::to_series() const {
    PowerSeries u(ring_, maxlen_);
    for (const auto& [w, c] : terms_) {
        if (w.contains_tau()) throw Error(ErrorCode::InvalidArgument, "series involves tau: " + str());
        u.set_coeff(w.length(), c);
    }
    return u;
}

void NCSeries::check_compatible(const NCSeries& b) const {
    if (ring_ != b.ring_)
        throw Error(ErrorCode::IncompatibleRing, "NC series over " + ring_.spec() + " and " + b.ring_.spec());
    if (t_odd_ != b.t_odd_) throw Error(ErrorCode::ParityMismatch, "NC series with different parity of t");
}

NCSeries& NCSeries::operator+=(const NCSeries& b) {
    check_compatible(b);
    if (b.maxlen_ < maxlen_) *this = truncated(b.maxlen_);
    for (const auto& [w, c] : b.terms_)
        if (w.length() <= maxlen_) accumulate(terms_, w, c);
    return *this;
}

NCSeries& NCSeries::operator-=(const NCSeries& b) { return *this += -b; }

NCSeries NCSeries::operator-() const {
    NCSeries s = *this;
    for (auto& [w, c] : s.terms_) c = -c;
    return s;
}

NCSeries operator*(const NCSeries& a, const NCSeries& b) {
    a.check_compatible(b);
    int n = std::min(a.maxlen_ + b.min_length(), b.maxlen_ + a.min_length());
    n = std::min(n, std::max(a.maxlen_, b.maxlen_));
    NCSeries out(a.ring_, n, a.t_odd_);
    for (const auto& [wa, ca] : a.terms_)
        for (const auto& [wb, cb] : b.terms_)
            if (wa.length() + wb.length() <= n) accumulate(out.terms_, wa * wb, ca * cb);
    return out;
}

NCSeries operator*(const RingElem& c, const NCSeries& a) {
    NCSeries s(a.ring_, a.maxlen_, a.t_odd_);
    for (const auto& [w, x] : a.terms_) accumulate(s.terms_, w, c * x);
    return s;
}

bool operator==(const NCSeries& a, const NCSeries& b) {
    return a.ring_ == b.ring_ && a.maxlen_ == b.maxlen_ && a.t_odd_ == b.t_odd_ && a.terms_ == b.terms_;
}

bool NCSeries::agrees_with(const NCSeries& b) const {
    check_compatible(b);
    int n = std::min(maxlen_, b.maxlen_);
    return truncated(n).terms_ == b.truncated(n).terms_;
}

std::string NCSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        std::string coeff = c.str();
        bool negative = c.terms().size() == 1 && coeff[0] == '-';
        if (negative) coeff = coeff.substr(1);
        if (c.terms().size() > 1) coeff = "(" + coeff + ")";
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        if (w.length() == 0) {
            os << coeff;
        } else if (coeff == "1") {
            os << w.str();
        } else {
            os << coeff << "*" << w.str();
        }
    }
    return os.str();
}

NCSeries commutator(const NCSeries& a, const NCSeries& b) {
    int pa = a.parity().value_or(0);
    int pb = b.parity().value_or(0);
    NCSeries ab = a * b;
    NCSeries ba = b * a;
    return (pa & pb) ? ab + ba : ab - ba;
}

// ---------------------------------------------------------------------------
// Derivations

Derivation Derivation::make(NCSeries on_tau, NCSeries on_t) {
    on_tau.check_compatible(on_t);
    int tpar = on_tau.t_odd() ? 1 : 0;
    std::optional<int> p;
    if (auto q = on_tau.parity()) p = (*q + 1) & 1;
    if (auto q = on_t.parity()) {
        int r = (*q + tpar) & 1;
        if (p && *p != r) throw Error(ErrorCode::ParityMismatch, "derivation images have inconsistent parities");
        p = r;
    }
    return Derivation{std::move(on_tau), std::move(on_t), p.value_or(0)};
}

bool Derivation::is_homogeneous() const {
    int tpar = t_odd() ? 1 : 0;
    if (!on_tau.is_homogeneous() || !on_t.is_homogeneous()) return false;
    if (auto q = on_tau.parity(); q && ((*q + 1) & 1) != parity) return false;
    if (auto q = on_t.parity(); q && ((*q + tpar) & 1) != parity) return false;
    return true;
}

bool Derivation::is_normalized() const { return !on_tau.contains_tau() && !on_t.contains_tau(); }

Derivation operator+(const Derivation& a, const Derivation& b) {
    if (a.parity != b.parity) throw Error(ErrorCode::ParityMismatch, "sum of derivations of different parity");
    return Derivation{a.on_tau + b.on_tau, a.on_t + b.on_t, a.parity};
}

Derivation operator-(const Derivation& a, const Derivation& b) {
    if (a.parity != b.parity) throw Error(ErrorCode::ParityMismatch, "difference of derivations of different parity");
    return Derivation{a.on_tau - b.on_tau, a.on_t - b.on_t, a.parity};
}

NCSeries derivation_apply(const Derivation& xi, const NCSeries& x) {
    x.check_compatible(xi.on_tau);
    x.check_compatible(xi.on_t);
    const bool t_odd = x.t_odd();
    const int m = std::min(xi.on_tau.min_length(), xi.on_t.min_length());
    const int n = std::min(xi.maxlen(), x.maxlen() + m - 1);
    NCSeries out(x.ring(), std::max(n, 0), t_odd);
    if (n < 0) return out;
    TermMap acc;
    for (const auto& [w, c] : x.terms()) {
        const int len = w.length();
        int prefix_parity = 0;
        for (int i = 0; i < len; ++i) {
            const bool is_t = w.letter_is_t(i);
            const NCSeries& image = is_t ? xi.on_t : xi.on_tau;
            const bool negative = (xi.parity & prefix_parity) != 0;
            const Word pre = w.prefix(i);
            const Word post = w.suffix_from(i + 1);
            const int outer = len - 1;
            for (const auto& [iw, ic] : image.terms()) {
                if (iw.length() + outer > n) continue;
                RingElem coeff = c * ic;
                accumulate(acc, pre * iw * post, negative ? -coeff : coeff);
            }
            prefix_parity ^= is_t ? (t_odd ? 1 : 0) : 1;
        }
    }
    for (auto& [w, c] : acc) out.add_term(w, c);
    return out;
}

Derivation derivation_commutator(const Derivation& xi, const Derivation& eta) {
    if (!xi.is_homogeneous() || !eta.is_homogeneous())
        throw Error(ErrorCode::ParityMismatch, "commutator of inhomogeneous derivations");
    const bool both_odd = (xi.parity & eta.parity) != 0;
    auto on = [&](const NCSeries& g_xi, const NCSeries& g_eta) {
        NCSeries a = derivation_apply(xi, g_eta);
        NCSeries b = derivation_apply(eta, g_xi);
        return both_odd ? a + b : a - b;
    };
    return Derivation{on(xi.on_tau, eta.on_tau), on(xi.on_t, eta.on_t), (xi.parity + eta.parity) & 1};
}

Derivation unital_derivation(const PowerSeries& a, const PowerSeries& b, int maxlen, bool t_odd) {
    if (!a.coeff(0).is_zero() || !b.coeff(0).is_zero())
        throw Error(ErrorCode::InvalidArgument, "structure series must have zero constant term");
    const Ring r = a.ring();
    NCSeries tau = NCSeries::tau(r, maxlen, t_odd);
    NCSeries t = NCSeries::t(r, maxlen, t_odd);
    NCSeries on_tau = NCSeries::from_series(a, maxlen, t_odd) + tau * tau;
    NCSeries on_t = commutator(tau, t) + NCSeries::from_series(b, maxlen, t_odd);
    return Derivation{std::move(on_tau), std::move(on_t), 1};
}

Derivation mstar_even(const PowerSeries& u, int maxlen) {
    return unital_derivation(u, PowerSeries(u.ring(), u.trunc()), maxlen, false);
}

Derivation mstar_odd(const PowerSeries& v, const PowerSeries& w, int maxlen) {
    for (const PowerSeries* s : {&v, &w})
        for (int i = 1; i <= s->trunc(); i += 2)
            if (!s->coeff(i).is_zero())
                throw Error(ErrorCode::ParityMismatch, "odd structure series must involve even powers only");
    return unital_derivation(w, v, maxlen, true);
}

SquareZeroResult check_square_zero(const Derivation& xi) {
    SquareZeroResult res;
    res.on_tau = derivation_apply(xi, xi.on_tau);
    res.on_t = derivation_apply(xi, xi.on_t);
    for (auto [name, value] : {std::pair{"T", &res.on_tau}, std::pair{"t", &res.on_t}}) {
        if (!value->is_zero()) {
            const auto& [w, c] = *value->terms().begin();
            res.ok = false;
            res.generator = name;
            res.failing_word = w.str();
            res.coefficient = c;
            break;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Endomorphisms

namespace {

// Sum over words w of c_w phi(w), truncated at `target`, computed by
// splitting off the first letter: x = c + tau x_tau + t x_t.
TermMap substitute(const TermMap& x, const TermMap& img_tau, const TermMap& img_t, int target) {
    TermMap out;
    TermMap rest[2];
    for (const auto& [w, c] : x) {
        if (w.length() == 0) {
            accumulate(out, w, c);
            continue;
        }
        rest[w.letter_is_t(0) ? 1 : 0].emplace(w.suffix_from(1), c);
    }
    const TermMap* images[2] = {&img_tau, &img_t};
    for (int k = 0; k < 2; ++k) {
        if (rest[k].empty()) continue;
        const int m = min_length_of(*images[k], target + 1);
        if (m > target) continue;
        TermMap tail = substitute(rest[k], img_tau, img_t, target - m);
        for (const auto& [wi, ci] : *images[k])
            for (const auto& [wt, ct] : tail)
                if (wi.length() + wt.length() <= target) accumulate(out, wi * wt, ci * ct);
    }
    return out;
}

NCEndo linear_endo(Ring r, int maxlen, bool t_odd, const RingElem& a, const RingElem& b, const RingElem& c,
                   const RingElem& d) {
    NCSeries tau = NCSeries::tau(r, maxlen, t_odd);
    NCSeries t = NCSeries::t(r, maxlen, t_odd);
    return NCEndo{a * tau + b * t, c * tau + d * t};
}

}  // namespace

NCEndo NCEndo::identity(Ring ring, int maxlen, bool t_odd) {
    return NCEndo{NCSeries::tau(ring, maxlen, t_odd), NCSeries::t(ring, maxlen, t_odd)};
}

NCEndo NCEndo::normalized(const PowerSeries& g, const PowerSeries& f, int maxlen, bool t_odd) {
    return NCEndo{NCSeries::tau(g.ring(), maxlen, t_odd) + NCSeries::from_series(g, maxlen, t_odd),
                  NCSeries::from_series(f, maxlen, t_odd)};
}

bool NCEndo::is_normalized() const {
    NCSeries g = image_tau - NCSeries::tau(ring(), image_tau.maxlen(), t_odd());
    return !g.contains_tau() && !image_t.contains_tau();
}

NCSeries apply_endo(const NCEndo& phi, const NCSeries& x) {
    x.check_compatible(phi.image_tau);
    x.check_compatible(phi.image_t);
    if (phi.image_tau.has_constant_term() || phi.image_t.has_constant_term())
        throw Error(ErrorCode::InvalidArgument, "endomorphism images must have zero constant term");
    const int m = std::min(phi.image_tau.min_length(), phi.image_t.min_length());
    const int n = std::min(phi.maxlen(), (x.maxlen() + 1) * m - 1);
    NCSeries out(x.ring(), n, x.t_odd());
    TermMap r = substitute(x.terms(), phi.image_tau.terms(), phi.image_t.terms(), n);
    for (const auto& [w, c] : r) out.add_term(w, c);
    return out;
}

NCEndo compose_endo(const NCEndo& phi, const NCEndo& psi) {
    return NCEndo{apply_endo(phi, psi.image_tau), apply_endo(phi, psi.image_t)};
}

NCEndo endo_inverse_newton(const NCEndo& phi) {
    const Ring r = phi.ring();
    const int L = phi.maxlen();
    const bool t_odd = phi.t_odd();
    const RingElem a = phi.image_tau.coeff(Word::tau()), b = phi.image_tau.coeff(Word::t());
    const RingElem c = phi.image_t.coeff(Word::tau()), d = phi.image_t.coeff(Word::t());
    const RingElem det = a * d - b * c;
    if (!is_unit(det)) throw Error(ErrorCode::NotInvertible, "linear part of the endomorphism is not invertible");
    const RingElem di = inverse(det);
    const NCEndo lin_inv = linear_endo(r, L, t_odd, d * di, -(b * di), -(c * di), a * di);

    NCEndo psi = lin_inv;
    const NCSeries gens[2] = {NCSeries::tau(r, L, t_odd), NCSeries::t(r, L, t_odd)};
    for (int iter = 0; iter <= L; ++iter) {
        bool done = true;
        NCSeries* images[2] = {&psi.image_tau, &psi.image_t};
        for (int k = 0; k < 2; ++k) {
            NCSeries err = apply_endo(phi, *images[k]) - gens[k];
            if (err.is_zero()) continue;
            done = false;
            *images[k] = (*images[k] - apply_endo(lin_inv, err)).truncated(L);
        }
        if (done) break;
    }
    return psi;
}

NCEndo endo_inverse(const NCEndo& phi) {
    if (!phi.is_normalized()) return endo_inverse_newton(phi);
    const int L = phi.maxlen();
    const bool t_odd = phi.t_odd();
    const PowerSeries f = phi.image_t.to_series();
    const PowerSeries g = (phi.image_tau - NCSeries::tau(phi.ring(), L, t_odd)).to_series();
    PowerSeries f_inv;
    try {
        f_inv = reversion(f);
    } catch (const Error&) {
        throw Error(ErrorCode::NotInvertible, "linear part of the endomorphism is not invertible");
    }
    return NCEndo::normalized(-compose(g, f_inv), f_inv, L, t_odd);
}

Derivation conjugate(const NCEndo& phi, const Derivation& xi) {
    const NCEndo psi = endo_inverse(phi);
    return Derivation{apply_endo(phi, derivation_apply(xi, psi.image_tau)),
                      apply_endo(phi, derivation_apply(xi, psi.image_t)), xi.parity};
}

}  // namespace moore
