#pragma once

// Hochschild cohomology of even Moore algebras: the closed form
// R[[t]]/(u'(t)), a brute-force computation on the complex of normalized
// derivations, and the ramification analysis over a DVR.

#include <optional>
#include <string>
#include <vector>

#include "moore/moduli.hpp"

namespace moore {

enum class Torsion { ResidueAlgebra, TorsionFree, NotApplicable };

std::string torsion_name(Torsion t);

struct HHReport {
    PowerSeries derivative;             // u'(t)
    std::string quotient;               // description of the presentation
    std::optional<int> rank;            // free rank over R; nullopt means infinite
    Torsion torsion = Torsion::NotApplicable;
    std::optional<int> ramification_index;
    std::optional<PowerSeries> eisenstein;  // distinguished factor of u'
    int eisenstein_precision = 0;           // pi-adic precision of its coefficients
    bool eisenstein_verified = false;       // constant term has valuation exactly 1
    std::optional<int> mod_p_height;        // height of u mod pi
    std::optional<int> stated_index;        // index given by the height of u mod pi
    bool discrepancy = false;               // stated_index differs from the computed rank
    std::optional<bool> residue_criterion;  // u = v(t^p) mod pi, checked directly on u
};

/// HH(A, A) = R[[t]]/(u'). Over a DVR also classifies the quotient: residue
/// algebra when u' = 0 mod pi, otherwise free of rank weierstrass_rank(u').
/// Throws ZeroDivisor when u_1 is a zero divisor, UnsupportedCase for odd
/// algebras, NeedsHigherPrecision when the distinguished factor is not
/// determined at any precision.
HHReport hh_closed_form(const MooreAlgebra& m);

/// hh_closed_form with the hypotheses of the ramification statement: Z/p^K
/// and u_1 = pi * unit. Throws NoUniformizer or InvalidArgument otherwise.
HHReport hh_structure(const MooreAlgebra& m);

struct HHBruteForce {
    int maxdeg = 0;
    std::vector<int> tau_dims;  // per t-degree, classes A(t) d_tau
    std::vector<int> t_dims;    // per t-degree, classes B(t) d_t
    int differential_rank = 0;  // rank of d_t -> d_tau modulo t^{maxdeg+1}
    bool d_squared_zero = false;
};

/// Homology of xi -> [xi, m*] on normalized derivations A(t) d_tau + B(t) d_t
/// with t-degree <= maxdeg, graded by the t-adic filtration. Boundaries are
/// taken modulo t^{maxdeg+1}; cycles are tested against every known
/// coefficient of u, so d_t classes are exact when trunc > maxdeg + ord(u').
/// v is specialized to 1 in Laurent rings. Throws NonFieldRing outside Q and F_p, and
/// NeedsHigherPrecision when u is known below t^{maxdeg+1}.
HHBruteForce hh_bruteforce(const MooreAlgebra& m, int maxdeg);

/// Per-degree dimensions of R[t]/(u'(t), t^{maxdeg+1}) over a field.
std::vector<int> quotient_dims(const PowerSeries& u, int maxdeg);

}  // namespace moore
