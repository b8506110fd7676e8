#include "moore/series.hpp"

#include <algorithm>
#include <sstream>

namespace moore {

namespace {

int order_or_past(const PowerSeries& a) { return a.order().value_or(a.trunc() + 1); }

// Plain truncated product to order n, assuming the inputs are long enough.
std::vector<RingElem> raw_mul(const PowerSeries& a, const PowerSeries& b, int n) {
    Ring r = a.ring();
    std::vector<RingElem> out(n + 1, r.zero());
    int na = std::min(a.trunc(), n);
    for (int i = 0; i <= na; ++i) {
        const RingElem& x = a.coeff(i);
        if (x.is_zero()) continue;
        int nb = std::min(b.trunc(), n - i);
        for (int j = 0; j <= nb; ++j) {
            const RingElem& y = b.coeff(j);
            if (!y.is_zero()) out[i + j] += x * y;
        }
    }
    return out;
}

// u(f) to order n by Horner's scheme, ignoring validity bookkeeping.
PowerSeries raw_compose(const PowerSeries& u, const PowerSeries& f, int n) {
    Ring r = u.ring();
    PowerSeries fn = PowerSeries::from_coeffs(r, n, [&] {
        std::vector<RingElem> c(n + 1, r.zero());
        for (int i = 0; i <= std::min(n, f.trunc()); ++i) c[i] = f.coeff(i);
        return c;
    }());
    PowerSeries acc(r, n);
    int top = std::min(u.trunc(), n);
    for (int i = top; i >= 0; --i) {
        acc = PowerSeries::from_coeffs(r, n, raw_mul(acc, fn, n));
        std::vector<RingElem> c = acc.coeffs();
        c[0] += u.coeff(i);
        acc = PowerSeries::from_coeffs(r, n, std::move(c));
    }
    return acc;
}

bool topologically_nilpotent(const RingElem& c) {
    if (c.is_zero()) return true;
    return c.ring().has_uniformizer() && valuation(c) >= 1;
}

}  // namespace

PowerSeries::PowerSeries(Ring ring, int trunc) : ring_(ring), trunc_(trunc) {
    if (trunc < 0) throw Error(ErrorCode::InvalidArgument, "truncation must be non-negative");
    c_.assign(trunc + 1, ring.zero());
}

PowerSeries PowerSeries::from_coeffs(Ring ring, int trunc, std::vector<RingElem> coeffs) {
    PowerSeries s(ring, trunc);
    if (coeffs.size() > s.c_.size()) coeffs.resize(s.c_.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) s.set_coeff(static_cast<int>(i), std::move(coeffs[i]));
    return s;
}

PowerSeries PowerSeries::monomial(Ring ring, int trunc, const RingElem& c, int degree) {
    PowerSeries s(ring, trunc);
    if (degree <= trunc) s.set_coeff(degree, c);
    return s;
}

PowerSeries PowerSeries::identity(Ring ring, int trunc) {
    return monomial(ring, trunc, ring.one(), 1);
}

const RingElem& PowerSeries::coeff(int i) const {
    static const RingElem zero;
    if (i < 0) return zero;
    if (i > trunc_)
        throw Error(ErrorCode::InvalidArgument,
                    "coefficient " + std::to_string(i) + " beyond truncation " + std::to_string(trunc_));
    return c_[i];
}

void PowerSeries::set_coeff(int i, RingElem value) {
    if (i < 0 || i > trunc_)
        throw Error(ErrorCode::InvalidArgument, "coefficient index out of range");
    if (value.ring().valid() && value.ring() != ring_)
        throw Error(ErrorCode::IncompatibleRing,
                    "coefficient in " + value.ring().spec() + " for series over " + ring_.spec());
    c_[i] = value.ring().valid() ? std::move(value) : ring_.zero();
}

std::optional<int> PowerSeries::order() const {
    for (int i = 0; i <= trunc_; ++i)
        if (!c_[i].is_zero()) return i;
    return std::nullopt;
}

PowerSeries PowerSeries::truncated(int n) const {
    if (n >= trunc_) return *this;
    return from_coeffs(ring_, n, std::vector<RingElem>(c_.begin(), c_.begin() + n + 1));
}

PowerSeries PowerSeries::low_part(int n) const {
    PowerSeries s(ring_, trunc_);
    for (int i = 0; i < std::min(n, trunc_ + 1); ++i) s.c_[i] = c_[i];
    return s;
}

PowerSeries PowerSeries::high_part(int n) const {
    int t = std::max(trunc_ - n, 0);
    PowerSeries s(ring_, t);
    for (int i = n; i <= trunc_; ++i) s.c_[i - n] = c_[i];
    return s;
}

void PowerSeries::check_same_ring(const PowerSeries& b) const {
    if (ring_ != b.ring_)
        throw Error(ErrorCode::IncompatibleRing, "series over " + ring_.spec() + " and " + b.ring_.spec());
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& b) {
    check_same_ring(b);
    if (b.trunc_ < trunc_) *this = truncated(b.trunc_);
    for (int i = 0; i <= trunc_; ++i) c_[i] += b.c_[i];
    return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& b) {
    check_same_ring(b);
    if (b.trunc_ < trunc_) *this = truncated(b.trunc_);
    for (int i = 0; i <= trunc_; ++i) c_[i] -= b.c_[i];
    return *this;
}

PowerSeries PowerSeries::operator-() const {
    PowerSeries s = *this;
    for (auto& c : s.c_) c = -c;
    return s;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    a.check_same_ring(b);
    int n = std::min(a.trunc_ + order_or_past(b), b.trunc_ + order_or_past(a));
    n = std::min(n, std::max(a.trunc_, b.trunc_));
    return PowerSeries::from_coeffs(a.ring_, n, raw_mul(a, b, n));
}

PowerSeries operator*(const RingElem& c, const PowerSeries& a) {
    PowerSeries s = a;
    for (auto& x : s.c_) x = c * x;
    return s;
}

bool operator==(const PowerSeries& a, const PowerSeries& b) {
    return a.ring_ == b.ring_ && a.trunc_ == b.trunc_ && a.c_ == b.c_;
}

bool PowerSeries::agrees_with(const PowerSeries& b) const {
    check_same_ring(b);
    int n = std::min(trunc_, b.trunc_);
    for (int i = 0; i <= n; ++i)
        if (c_[i] != b.c_[i]) return false;
    return true;
}

std::string PowerSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= trunc_; ++i) {
        const RingElem& c = c_[i];
        if (c.is_zero()) continue;
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
        std::string var = i == 0 ? "" : (i == 1 ? "t" : "t^" + std::to_string(i));
        if (var.empty()) {
            os << coeff;
        } else if (coeff == "1") {
            os << var;
        } else {
            os << coeff << "*" << var;
        }
    }
    return first ? "0" : os.str();
}

PowerSeries compose(const PowerSeries& u, const PowerSeries& f) {
    if (u.ring() != f.ring())
        throw Error(ErrorCode::IncompatibleRing, "series over " + u.ring().spec() + " and " + f.ring().spec());
    if (!f.coeff(0).is_zero())
        throw Error(ErrorCode::CompositionUndefined, "inner series has nonzero constant term");
    const int of = order_or_past(f);
    const int ou = order_or_past(u);
    // dropped u-terms start at degree (Nu+1)*ord f; the f-error enters u_{ou} f^{ou}
    long n = static_cast<long>(u.trunc() + 1) * of - 1;
    if (ou <= u.trunc() && ou >= 1) n = std::min<long>(n, f.trunc() + static_cast<long>(ou - 1) * of);
    n = std::min<long>(n, std::max(u.trunc(), f.trunc()));
    return raw_compose(u, f, static_cast<int>(n));
}

PowerSeries reversion(const PowerSeries& f) {
    if (f.trunc() < 1 || !f.coeff(0).is_zero() || !is_unit(f.coeff(1)))
        throw Error(ErrorCode::NotInvertible, "series " + f.str() + " has no compositional inverse");
    const Ring r = f.ring();
    const int n = f.trunc();
    const RingElem a = inverse(f.coeff(1));
    const PowerSeries t = PowerSeries::identity(r, n);
    // each step fixes one more coefficient: g <- g - f_1^{-1} (f(g) - t)
    PowerSeries g = a * t;
    for (int k = 2; k <= n; ++k) {
        PowerSeries err = raw_compose(f, g, n) - t;
        g -= a * err;
    }
    return g;
}

PowerSeries derivative(const PowerSeries& u) {
    if (u.trunc() == 0) return PowerSeries(u.ring(), 0);
    PowerSeries d(u.ring(), u.trunc() - 1);
    for (int i = 1; i <= u.trunc(); ++i) d.set_coeff(i - 1, u.coeff(i) * static_cast<long>(i));
    return d;
}

PowerSeries series_inverse(const PowerSeries& f) {
    if (!is_unit(f.coeff(0)))
        throw Error(ErrorCode::NotAUnit, "series " + f.str() + " has non-unit constant term");
    const Ring r = f.ring();
    const int n = f.trunc();
    const RingElem a = inverse(f.coeff(0));
    std::vector<RingElem> g(n + 1, r.zero());
    g[0] = a;
    for (int k = 1; k <= n; ++k) {
        RingElem s = r.zero();
        for (int i = 1; i <= k; ++i) s += f.coeff(i) * g[k - i];
        g[k] = -(a * s);
    }
    return PowerSeries::from_coeffs(r, n, std::move(g));
}

int height(const PowerSeries& u) {
    auto o = u.order();
    if (!o)
        throw Error(ErrorCode::HeightUndefined,
                    "series vanishes to truncation " + std::to_string(u.trunc()));
    return *o;
}

PowerSeries reduce_mod_pi(const PowerSeries& u) {
    return map_coeffs(u, u.ring().residue_ring(), [](const RingElem& c) { return reduce_to_residue(c); });
}

PowerSeries specialize_v(const PowerSeries& u) {
    return map_coeffs(u, u.ring().without_laurent(), [](const RingElem& c) { return specialize_v(c); });
}

bool is_trivial(const PowerSeries& u) {
    const Ring r = u.ring();
    RingElem pi = r.uniformizer();
    for (int i = 0; i <= u.trunc(); ++i)
        if (u.coeff(i) != (i == 1 ? pi : r.zero())) return false;
    return true;
}

std::optional<int> canonical_degree(const PowerSeries& u) {
    const Ring r = u.ring();
    if (u.trunc() < 2 || !u.coeff(0).is_zero() || u.coeff(1) != r.uniformizer()) return std::nullopt;
    int n = -1;
    for (int i = 2; i <= u.trunc(); ++i) {
        const RingElem& c = u.coeff(i);
        if (n < 0) {
            if (is_unit(c)) {
                n = i;
            } else if (valuation(c) < 1) {
                return std::nullopt;
            }
        } else if (!c.is_zero()) {
            return std::nullopt;
        }
    }
    if (n < 0) return std::nullopt;
    return n;
}

int weierstrass_rank(const PowerSeries& f) {
    for (int m = 0; m <= f.trunc(); ++m) {
        const RingElem& c = f.coeff(m);
        if (is_unit(c)) return m;
        if (!topologically_nilpotent(c))
            throw Error(ErrorCode::UnsupportedCase,
                        "coefficient " + c.str() + " is neither a unit nor divisible by the uniformizer");
    }
    throw Error(ErrorCode::RankUndetermined,
                "no unit coefficient up to t^" + std::to_string(f.trunc()) +
                    "; increase truncation or precision");
}

DistinguishedFactor weierstrass_factor(const PowerSeries& f) {
    const int m = weierstrass_rank(f);
    const Ring r = f.ring();
    const int n = f.trunc();
    int precision = (n + 1) / m;
    if (m == 0) precision = r.has_uniformizer() ? r.precision() : 1;
    if (r.has_uniformizer()) precision = std::min(precision, r.precision());

    // t^m = q f + r with deg r < m, via q = g^{-1} (1 - hi_m(q f_low))
    const PowerSeries f_low = f.low_part(m);
    const PowerSeries g = f.high_part(m);
    const PowerSeries g_inv = series_inverse(g);
    const PowerSeries one = PowerSeries::monomial(r, g.trunc(), r.one(), 0);
    PowerSeries q = g_inv;
    if (m > 0 && r.has_uniformizer()) {
        for (int j = 1; j < precision; ++j) {
            PowerSeries prod = PowerSeries::from_coeffs(r, n, raw_mul(q, f_low, n));
            q = g_inv * (one - prod.high_part(m));
        }
    }
    PowerSeries poly(r, m);
    poly.set_coeff(m, r.one());
    if (m > 0) {
        PowerSeries qf = PowerSeries::from_coeffs(r, m, raw_mul(q, f_low, m));
        for (int i = 0; i < m; ++i) poly.set_coeff(i, qf.coeff(i));
    }
    return {poly, precision};
}

}  // namespace moore
