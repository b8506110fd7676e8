#pragma once

// One-variable truncated power series over a coefficient ring. A series with
// truncation N stores the coefficients of t^0..t^N; every operation returns
// the largest truncation for which all reported coefficients are exact.

#include <optional>
#include <string>
#include <vector>

#include "moore/rings.hpp"

namespace moore {

class PowerSeries {
public:
    PowerSeries() = default;
    /// Zero series known to order `trunc`.
    PowerSeries(Ring ring, int trunc);

    static PowerSeries from_coeffs(Ring ring, int trunc, std::vector<RingElem> coeffs);
    static PowerSeries monomial(Ring ring, int trunc, const RingElem& c, int degree);
    /// The identity series t.
    static PowerSeries identity(Ring ring, int trunc);

    Ring ring() const { return ring_; }
    int trunc() const { return trunc_; }
    const std::vector<RingElem>& coeffs() const { return c_; }

    /// Coefficient of t^i; zero for i < 0, throws for i > trunc.
    const RingElem& coeff(int i) const;
    void set_coeff(int i, RingElem value);

    /// Index of the first nonzero coefficient, nullopt if zero to truncation.
    std::optional<int> order() const;
    bool is_zero() const { return !order().has_value(); }

    /// Same coefficients known only to min(trunc, n).
    PowerSeries truncated(int n) const;
    /// Sum_{i<n} c_i t^i and (f - lo)/t^n.
    PowerSeries low_part(int n) const;
    PowerSeries high_part(int n) const;

    PowerSeries& operator+=(const PowerSeries& b);
    PowerSeries& operator-=(const PowerSeries& b);
    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator*(const RingElem& c, const PowerSeries& a);
    PowerSeries operator-() const;

    /// Same ring, same truncation, same coefficients.
    friend bool operator==(const PowerSeries& a, const PowerSeries& b);
    friend bool operator!=(const PowerSeries& a, const PowerSeries& b) { return !(a == b); }

    /// Coefficients agree up to the smaller of the two truncations.
    bool agrees_with(const PowerSeries& b) const;

    /// Human form, e.g. `5*t + v*t^2 + 3*t^4`; "0" for the zero series.
    std::string str() const;

private:
    void check_same_ring(const PowerSeries& b) const;

    Ring ring_;
    int trunc_ = -1;
    std::vector<RingElem> c_;
};

/// Applies `fn` to every coefficient; `target` is the ring of the results.
template <class Fn>
PowerSeries map_coeffs(const PowerSeries& a, Ring target, Fn fn) {
    std::vector<RingElem> out;
    out.reserve(a.coeffs().size());
    for (const auto& c : a.coeffs()) out.push_back(fn(c));
    return PowerSeries::from_coeffs(target, a.trunc(), std::move(out));
}

/// u(f(t)). Throws CompositionUndefined if f(0) != 0.
PowerSeries compose(const PowerSeries& u, const PowerSeries& f);

/// Compositional inverse. Throws NotInvertible unless f(0)=0 and f_1 is a unit.
PowerSeries reversion(const PowerSeries& f);

PowerSeries derivative(const PowerSeries& u);

/// Multiplicative inverse of a series with unit constant term.
PowerSeries series_inverse(const PowerSeries& f);

/// Least n with u_n != 0. Throws HeightUndefined if u vanishes to truncation.
int height(const PowerSeries& u);

/// Coefficientwise image in the residue ring (identity outside DVR mode).
PowerSeries reduce_mod_pi(const PowerSeries& u);

/// Coefficientwise v -> 1.
PowerSeries specialize_v(const PowerSeries& u);

/// u = pi*t to truncation. Throws NoUniformizer outside DVR mode.
bool is_trivial(const PowerSeries& u);

/// The degree n >= 2 when u is canonical: u_1 = pi, pi | u_2..u_{n-1}, u_n a
/// unit and u_i = 0 for i > n. Throws NoUniformizer outside DVR mode.
std::optional<int> canonical_degree(const PowerSeries& u);

/// Least m with f_m a unit (the free rank of R[[t]]/(f)). Throws
/// RankUndetermined when no stored coefficient is a unit.
int weierstrass_rank(const PowerSeries& f);

struct DistinguishedFactor {
    PowerSeries polynomial;  // monic of degree m = weierstrass_rank(f)
    int precision;           // coefficients are exact modulo pi^precision
};

/// Distinguished polynomial P with f = unit * P, computed by division of
/// t^m by f.
DistinguishedFactor weierstrass_factor(const PowerSeries& f);

}  // namespace moore
