#pragma once

// Exact coefficient rings: Q, F_p and the truncated p-adic integers Z/p^K,
// each optionally extended by an invertible degree-2 variable v (Laurent
// polynomials) and, for symbolic checks, by polynomial indeterminates.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "moore/error.hpp"

namespace moore {

enum class RingKind { Rationals, PrimeField, TruncatedPadic };

class RingElem;
struct RingData;

/// Exponent vector of a monomial. Slot 0 is the exponent of v when the ring
/// is Laurent (any sign); the remaining slots are polynomial indeterminates
/// (non-negative).
using Monomial = std::vector<int>;

/// Lightweight handle to an interned, immutable ring description. Two
/// handles compare equal iff they describe the same ring.
class Ring {
public:
    /// Invalid handle; only meaningful for ring-less zeros.
    Ring() = default;

    static Ring rationals(bool laurent = false);
    static Ring prime_field(long p, bool laurent = false);
    static Ring truncated_padic(long p, int precision, bool laurent = false);

    /// Parses `Q`, `F<p>`, `Zp:<p>:<K>` with an optional `[v]` suffix and an
    /// optional `{a,b,...}` list of indeterminates, the inverse of spec().
    static Ring parse(std::string_view spec);

    /// Same base ring with polynomial indeterminates adjoined.
    Ring with_symbols(std::vector<std::string> names) const;
    Ring without_symbols() const;
    Ring without_laurent() const;
    /// Z/p^K -> F_p (keeping the Laurent flag and symbols); identity otherwise.
    Ring residue_ring() const;

    RingKind kind() const;
    long prime() const;       // 0 for Q
    int precision() const;    // K for Z/p^K, 0 otherwise
    bool laurent() const;
    const std::vector<std::string>& symbols() const;
    std::size_t monomial_size() const;
    const mpz_class& modulus() const;  // p, p^K, or 0 for Q
    long characteristic() const;       // 0 for Q and Z/p^K, p for F_p

    bool has_uniformizer() const { return kind() == RingKind::TruncatedPadic; }
    /// Q or F_p (optionally Laurent): every homogeneous nonzero element is a unit.
    bool is_graded_field() const;
    /// Q or F_p without v and without indeterminates.
    bool is_field() const;

    std::string spec() const;

    RingElem zero() const;
    RingElem one() const;
    RingElem from_int(long n) const;
    RingElem from_mpz(const mpz_class& n) const;
    RingElem from_rational(const mpq_class& q) const;
    RingElem v_power(int k) const;
    RingElem symbol(std::size_t index) const;
    RingElem uniformizer() const;

    bool operator==(const Ring& other) const { return data_ == other.data_; }
    bool operator!=(const Ring& other) const { return data_ != other.data_; }

    const RingData* data() const { return data_; }
    bool valid() const { return data_ != nullptr; }

private:
    explicit Ring(const RingData* d) : data_(d) {}
    static Ring intern(RingData proto);

    const RingData* data_ = nullptr;
    friend class RingElem;
};

/// Element of a `Ring`: a finitely supported map monomial -> scalar.
/// A default-constructed element is a ring-less zero that combines with any
/// ring; all other mixed-ring arithmetic throws `IncompatibleRing`.
class RingElem {
public:
    struct Term {
        Monomial mono;
        mpq_class coeff;
    };

    RingElem() = default;

    Ring ring() const { return ring_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    const std::vector<Term>& terms() const { return terms_; }

    /// Constant term (monomial with all exponents zero).
    mpq_class constant_coeff() const;

    RingElem& operator+=(const RingElem& b);
    RingElem& operator-=(const RingElem& b);
    RingElem& operator*=(const RingElem& b);

    friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
    friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
    friend RingElem operator*(const RingElem& a, const RingElem& b);
    friend RingElem operator*(const RingElem& a, long n);
    friend RingElem operator*(long n, const RingElem& a) { return a * n; }
    RingElem operator-() const;

    friend bool operator==(const RingElem& a, const RingElem& b);
    friend bool operator!=(const RingElem& a, const RingElem& b) { return !(a == b); }

    RingElem pow(unsigned e) const;

    /// 2 * (v-exponent) when every term carries the same power of v, 0 in a
    /// non-Laurent ring; nullopt for zero or inhomogeneous elements.
    std::optional<int> degree() const;

    std::string str() const;

    /// Builds an element from raw terms, normalizing scalars for `ring`.
    static RingElem from_terms(Ring ring, std::vector<Term> terms);

private:
    void normalize();
    void adopt_ring(const RingElem& other);

    Ring ring_;
    std::vector<Term> terms_;  // sorted by monomial, nonzero coefficients
};

bool is_unit(const RingElem& a);
RingElem inverse(const RingElem& a);

/// pi-adic order in Z/p^K (the sentinel K for zero); throws NoUniformizer
/// in graded-field mode.
int valuation(const RingElem& a);

/// Some y with pi * y = a; requires valuation(a) >= 1.
RingElem divide_by_uniformizer(const RingElem& a);

/// True when `a` is not a zero divisor of the complete ring being modeled
/// (nonzero over a field, valuation < K in Z/p^K).
bool is_regular(const RingElem& a);

/// Image under Z/p^K -> F_p (identity on other rings).
RingElem reduce_to_residue(const RingElem& a);

/// Image under v -> 1 in `a.ring().without_laurent()`.
RingElem specialize_v(const RingElem& a);

/// Scalar modular inverse helper exposed for tests: x^{-1} mod m.
mpz_class mod_inverse(const mpz_class& x, const mpz_class& m);

}  // namespace moore
