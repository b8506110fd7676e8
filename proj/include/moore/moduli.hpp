#pragma once

// Moore algebras on a two-cell complex, the action of normalized
// automorphisms, and their classification up to weak equivalence.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moore/noncomm.hpp"
#include "moore/series.hpp"

namespace moore {

struct MooreAlgebra {
    enum class Variant { Even, Odd };

    Variant variant = Variant::Even;
    int d = 0;
    PowerSeries u;  // even variant
    PowerSeries v;  // odd variant: coefficient of t^{2i} is v_i
    PowerSeries w;  // odd variant: coefficient of t^{2i} is w_i

    /// Throws InvalidArgument if d is odd or u(0) != 0.
    static MooreAlgebra even(PowerSeries u, int d = 0);
    /// Throws InvalidArgument if d is even; ParityMismatch if v or w has odd powers.
    static MooreAlgebra odd(PowerSeries v, PowerSeries w, int d = 1);

    bool is_even() const { return variant == Variant::Even; }
    Ring ring() const { return is_even() ? u.ring() : v.ring(); }
    int trunc() const { return is_even() ? u.trunc() : std::min(v.trunc(), w.trunc()); }
};

/// The structure derivation m* of R<<tau, t>>.
Derivation moore_mstar(const MooreAlgebra& m, int maxlen);

/// Right action of an automorphism f on an even algebra: u -> u(f).
MooreAlgebra act(const MooreAlgebra& m, const PowerSeries& f);

/// Action of (G, F) on the odd-case pair (A, B) for one odd variable t:
///   A' = A(F) - G^2 - (D_B G(F^{-1}))(F),   B' = [G, t] + (D_B F^{-1})(F)
/// where D_B = B(t) d_t.
std::pair<PowerSeries, PowerSeries> act_full(const PowerSeries& a, const PowerSeries& b, const PowerSeries& g,
                                             const PowerSeries& f);

/// Class of an invertible scalar modulo n-th powers of units of a graded
/// field, with a canonical representative.
struct OrbitInvariant {
    int n = 0;
    RingElem representative;
    std::string str() const;
    friend bool operator==(const OrbitInvariant& a, const OrbitInvariant& b) {
        return a.n == b.n && a.representative == b.representative;
    }
};

/// Canonical representative of c modulo n-th powers of units. Throws
/// UnsupportedCase when the characteristic divides n, NotAUnit for c not a unit.
RingElem nth_power_class(const RingElem& c, int n);

/// (height, class of u_n modulo n-th powers). Graded-field mode only.
OrbitInvariant orbit_invariant(const MooreAlgebra& m);

struct CanonicalForm {
    enum class Kind { Trivial, Canonical, GradedFieldForm };

    Kind kind = Kind::Trivial;
    int n = 1;              // degree of the form (1 for trivial)
    PowerSeries form;       // the normal form u(h(t)), exact
    PowerSeries witness;    // h
    /// `form` with every coefficient reduced to its least residue modulo the
    /// pi-power to which the input determines it; equal on orbits.
    PowerSeries normalized;
    std::vector<int> coefficient_precision;  // per degree; empty over a field
    int steps = 0;          // substitutions performed

    std::string kind_name() const;
};

/// u(h) = u_n t^n over a graded field with char not dividing n = height(u).
CanonicalForm canonicalize_char0(const PowerSeries& u);

/// Trivial or canonical form over Z/p^K. Requires u_1 = r*pi with r a unit.
/// Throws WildCase if p divides the canonical degree.
CanonicalForm canonicalize_dvr(const PowerSeries& u);

/// Dispatches on the ring.
CanonicalForm canonicalize(const PowerSeries& u);

/// For j = 0..k, the pi-adic precision to which coefficient j of a
/// canonical form of degree k is determined by an input known modulo
/// (t^{trunc+1}, pi^K): tail terms propagate down k-1 degrees per extra
/// power of pi, and u_k is only defined modulo pi^{K-1} because pi is a
/// zero divisor in Z/p^K.
std::vector<int> canonical_form_precision(int k, int trunc, int ring_precision);

/// Weak equivalence of even algebras: orbit invariants over graded fields,
/// normalized canonical forms over Z/p^K.
bool equivalent(const MooreAlgebra& a, const MooreAlgebra& b);

struct DegreeViolation {
    std::string name;          // e.g. "u2", "v1", "w3"
    int expected = 0;
    std::optional<int> actual;  // nullopt for inhomogeneous coefficients
    std::string coefficient;
};

/// Coefficients whose v-degree differs from the degree forced by d. Empty
/// outside Laurent mode.
std::vector<DegreeViolation> degree_audit(const MooreAlgebra& m);

}  // namespace moore
