#pragma once

// Bar-side A-infinity machinery on a finite free graded module: cochains in
// Hom(T(sA), sA), the composition and commutator of coderivations, the
// Hochschild differential, unitality and the normalization retraction.
// Gradings enter only through parities; every ring element is even.

#include <map>
#include <string>
#include <vector>

#include "moore/moduli.hpp"
#include "moore/noncomm.hpp"
#include "moore/rings.hpp"

namespace moore {

/// Basis of A with a distinguished unit of degree 0.
struct GradedBasis {
    std::vector<std::string> names;
    std::vector<int> degrees;
    int unit = 0;

    /// Throws InvalidArgument for duplicate names or a unit of nonzero degree.
    static GradedBasis make(std::vector<std::string> names, std::vector<int> degrees, int unit = 0);
    /// {1, y} with |1| = 0 and |y| = d + 1.
    static GradedBasis two_cell(int d);

    int size() const { return static_cast<int>(names.size()); }
    /// Throws BasisMismatch for unknown names.
    int index_of(const std::string& name) const;
    /// Parity of [a] in sA.
    int suspended_parity(int g) const { return (degrees[g] + 1) & 1; }

    friend bool operator==(const GradedBasis& a, const GradedBasis& b) {
        return a.names == b.names && a.degrees == b.degrees && a.unit == b.unit;
    }
};

/// [a_1|...|a_n] as basis indices.
using BarWord = std::vector<int>;
/// Linear combination of bar words.
using TensorExpr = std::map<BarWord, RingElem>;

int bar_parity(const GradedBasis& basis, const BarWord& w);
std::string bar_word_str(const GradedBasis& basis, const BarWord& w);
std::string tensor_str(const GradedBasis& basis, const TensorExpr& e);

/// One component c_k : (sA)^{k} -> sA.
struct MultiComponent {
    int arity = 0;
    int parity = 0;
    std::map<BarWord, std::vector<RingElem>> table;  // dense output vectors, zero rows omitted
};

/// Element of Hom(T(sA), sA) known on all words of arity <= bound. Structures,
/// Hochschild cochains and morphism components share this representation.
class Cochain {
public:
    Cochain() = default;
    Cochain(Ring ring, GradedBasis basis, int parity, int bound);

    const Ring& ring() const { return ring_; }
    const GradedBasis& basis() const { return basis_; }
    int parity() const { return parity_; }
    int bound() const { return bound_; }
    const std::map<BarWord, std::vector<RingElem>>& entries() const { return entries_; }

    /// Coefficient of generator `out` in c[w].
    RingElem coeff(const BarWord& w, int out) const;
    /// c[w] as a dense vector.
    std::vector<RingElem> eval(const BarWord& w) const;
    /// Ignores words longer than the bound.
    void add(const BarWord& w, int out, const RingElem& c);

    MultiComponent component(int k) const;
    /// Largest arity with a nonzero entry; -1 for zero.
    int max_arity() const;
    bool is_zero() const { return entries_.empty(); }
    /// Every entry respects the declared parity.
    bool is_homogeneous() const;

    Cochain truncated(int bound) const;

    Cochain& operator+=(const Cochain& b);
    Cochain& operator-=(const Cochain& b);
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    friend Cochain operator*(const RingElem& c, const Cochain& a);
    Cochain operator-() const;

    /// Same ring, basis, parity, bound and entries.
    friend bool operator==(const Cochain& a, const Cochain& b);
    /// Entries agree on all arities up to the smaller bound.
    bool agrees_with(const Cochain& b) const;

    std::string str() const;

    void check_compatible(const Cochain& b) const;

private:
    Ring ring_;
    GradedBasis basis_;
    int parity_ = 0;
    int bound_ = 0;
    std::map<BarWord, std::vector<RingElem>> entries_;
};

using AInfStructure = Cochain;
using HochschildCochain = Cochain;

/// Coderivation determined by c applied to one bar word:
///   sum (-1)^{|c|(|a_1|+...+|a_i|+i)} [a_1|...|a_i|c_k[a_{i+1}|...]|...].
TensorExpr coderivation_extend(const Cochain& c, const BarWord& w);
/// Linear extension of coderivation_extend.
TensorExpr coderivation_apply(const Cochain& c, const TensorExpr& e);

/// Coalgebra map determined by even components f_i: sum over compositions
/// of n of [f_{i_1}[...]|...|f_{i_k}[...]].
TensorExpr morphism_extend(const Cochain& f, const BarWord& w);

/// The contraction [a_1|...|a_n] -> [1|a_1|...|a_n] of the bar construction.
TensorExpr bar_contraction(const GradedBasis& basis, const TensorExpr& e);

/// m_i o n_j, an arity i + j - 1 component.
MultiComponent compose_components(const MultiComponent& m, const MultiComponent& n, const GradedBasis& basis,
                                  const Ring& ring);
/// m o n summed over all components.
Cochain compose(const Cochain& m, const Cochain& n);
/// [a, b] = a o b - (-1)^{|a||b|} b o a.
Cochain commutator(const Cochain& a, const Cochain& b);

/// m o m, whose vanishing is the Stasheff identities.
Cochain stasheff_defect(const AInfStructure& m);
bool satisfies_stasheff(const AInfStructure& m);

/// m_2[1|a] = a = (-1)^{|a|} m_2[a|1] and m_i vanishes on words containing 1
/// for i != 2, over all basis words up to the bound.
bool is_unital(const AInfStructure& m);

/// c vanishes whenever one of its first i arguments is the unit.
bool is_i_normalized(const Cochain& c, int i);
bool is_normalized(const Cochain& c);

/// d(c) = [c, m].
Cochain hochschild_differential(const Cochain& c, const AInfStructure& m);

/// Reading of the sign exponent |a_1| + ... + |a_l| + i + 1 in s_i.
enum class InsertSign { Prefix, All };

/// s_i(c)[a_1|...|a_{n-1}] = (-1)^{|a_1|+...+|a_i|+i+1} c[a_1|...|a_i|1|a_{i+1}|...].
Cochain s_op(int i, const Cochain& c, InsertSign reading = InsertSign::Prefix);
/// h_i(c) = c - d(s_i c) - s_i(d c).
Cochain h_op(int i, const Cochain& c, const AInfStructure& m, InsertSign reading = InsertSign::Prefix);

struct NormalizationResult {
    Cochain normalized;  // h_{n-1} o ... o h_0 (c)
    Cochain homotopy;    // H = sum s_i(c_i), c_i the intermediate cochains
    Cochain defect;      // K = sum s_i(d c_i); c - normalized = dH + K, K = 0 for cocycles
    int steps = 0;
};

/// Applies h_0, ..., h_{upto-1}; the result is normalized on arities <= upto.
NormalizationResult normalize_cochain(const Cochain& c, const AInfStructure& m, int upto);

/// Bar-side structure of a derivation on R<<tau, t>> over the two-cell basis:
/// the coefficient of the word x_1...x_k in xi(tau) (resp. xi(t)) is the
/// coefficient of [1] (resp. [y]) in c_k[a_1|...|a_k], tau <-> 1, t <-> y.
/// Throws BasisMismatch unless the basis is two-cell with |y| + 1 = parity of t.
Cochain dualize(const Derivation& xi, const GradedBasis& basis);
/// Inverse of dualize.
Derivation undualize(const Cochain& c);

/// Bar-side structure of a Moore algebra with components up to `arity`.
AInfStructure moore_structure(const MooreAlgebra& m, int arity);

}  // namespace moore
