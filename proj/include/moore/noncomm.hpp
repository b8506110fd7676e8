#pragma once

// Truncated noncommutative power series R<<tau, t>> with Koszul signs,
// continuous derivations and continuous endomorphisms. tau is odd; t has the
// parity of the grading degree d.

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "moore/rings.hpp"
#include "moore/series.hpp"

namespace moore {

/// Word over {tau, t} packed as (length << 32) | letters, where bit
/// (len-1-i) is set iff letter i is t. Numeric order is shortlex with tau < t.
class Word {
public:
    static constexpr int kMaxLength = 30;

    Word() = default;
    static Word empty() { return Word(); }
    static Word tau() { return Word(1, 0); }
    static Word t() { return Word(1, 1); }
    static Word t_power(int n);
    /// Parses a string over {'T', 't'}; "1" or "" is the empty word.
    static Word parse(std::string_view letters);

    int length() const { return static_cast<int>(key_ >> 32); }
    std::uint32_t letters() const { return static_cast<std::uint32_t>(key_); }
    bool letter_is_t(int i) const { return (letters() >> (length() - 1 - i)) & 1u; }
    int count_t() const { return __builtin_popcount(letters()); }
    int count_tau() const { return length() - count_t(); }
    bool contains_tau() const { return count_tau() > 0; }

    /// Koszul parity of the word given the parity of t.
    int parity(bool t_odd) const { return (count_tau() + (t_odd ? count_t() : 0)) & 1; }

    Word prefix(int n) const;
    Word suffix_from(int i) const;
    friend Word operator*(Word a, Word b);

    std::string str() const;  // "1" for the empty word
    std::uint64_t key() const { return key_; }
    auto operator<=>(const Word&) const = default;

private:
    Word(int len, std::uint32_t bits) : key_((static_cast<std::uint64_t>(len) << 32) | bits) {}
    std::uint64_t key_ = 0;
};

/// Element of R<<tau, t>> known on all words of length <= maxlen.
class NCSeries {
public:
    NCSeries() = default;
    NCSeries(Ring ring, int maxlen, bool t_odd);

    static NCSeries word(Ring ring, int maxlen, bool t_odd, Word w, const RingElem& c);
    static NCSeries tau(Ring ring, int maxlen, bool t_odd);
    static NCSeries t(Ring ring, int maxlen, bool t_odd);
    /// Image of a commutative series in t: t^i -> the word t...t.
    static NCSeries from_series(const PowerSeries& u, int maxlen, bool t_odd);

    Ring ring() const { return ring_; }
    int maxlen() const { return maxlen_; }
    bool t_odd() const { return t_odd_; }
    const std::map<Word, RingElem>& terms() const { return terms_; }

    RingElem coeff(Word w) const;
    void add_term(Word w, const RingElem& c);

    bool is_zero() const { return terms_.empty(); }
    /// Shortest word with nonzero coefficient (maxlen + 1 if zero).
    int min_length() const;
    bool contains_tau() const;
    bool has_constant_term() const;

    /// Common parity of all terms; nullopt for zero. Throws ParityMismatch
    /// for inhomogeneous elements.
    std::optional<int> parity() const;
    bool is_homogeneous() const;

    NCSeries truncated(int n) const;

    /// Commutative series in t; throws InvalidArgument if tau occurs.
    PowerSeries to_series() const;

    NCSeries& operator+=(const NCSeries& b);
    NCSeries& operator-=(const NCSeries& b);
    friend NCSeries operator+(NCSeries a, const NCSeries& b) { return a += b; }
    friend NCSeries operator-(NCSeries a, const NCSeries& b) { return a -= b; }
    friend NCSeries operator*(const NCSeries& a, const NCSeries& b);
    friend NCSeries operator*(const RingElem& c, const NCSeries& a);
    NCSeries operator-() const;

    friend bool operator==(const NCSeries& a, const NCSeries& b);
    friend bool operator!=(const NCSeries& a, const NCSeries& b) { return !(a == b); }
    /// Coefficients agree on all words up to the smaller maxlen.
    bool agrees_with(const NCSeries& b) const;

    /// Debug dump, e.g. `5*Tt + v*ttT`.
    std::string str() const;

    void check_compatible(const NCSeries& b) const;

private:
    Ring ring_;
    int maxlen_ = 0;
    bool t_odd_ = false;
    std::map<Word, RingElem> terms_;
};

/// ab - (-1)^{|a||b|} ba for homogeneous a, b.
NCSeries commutator(const NCSeries& a, const NCSeries& b);

/// Continuous derivation determined by its values on tau and t. `parity`
/// drives the Koszul signs of the Leibniz rule.
struct Derivation {
    NCSeries on_tau;
    NCSeries on_t;
    int parity = 1;

    /// Infers the parity from the (homogeneous) images.
    static Derivation make(NCSeries on_tau, NCSeries on_t);

    bool t_odd() const { return on_tau.t_odd(); }
    int maxlen() const { return std::min(on_tau.maxlen(), on_t.maxlen()); }
    Ring ring() const { return on_tau.ring(); }

    /// Images are consistent with the declared parity.
    bool is_homogeneous() const;
    /// Neither image involves tau.
    bool is_normalized() const;

    friend bool operator==(const Derivation& a, const Derivation& b) {
        return a.parity == b.parity && a.on_tau == b.on_tau && a.on_t == b.on_t;
    }
    bool agrees_with(const Derivation& b) const {
        return parity == b.parity && on_tau.agrees_with(b.on_tau) && on_t.agrees_with(b.on_t);
    }
};

Derivation operator+(const Derivation& a, const Derivation& b);
Derivation operator-(const Derivation& a, const Derivation& b);

/// Signed Leibniz extension of xi to x.
NCSeries derivation_apply(const Derivation& xi, const NCSeries& x);

/// [xi, eta] = xi eta - (-1)^{|xi||eta|} eta xi, read off on generators.
Derivation derivation_commutator(const Derivation& xi, const Derivation& eta);

/// m* of an even structure: u(t) d_tau + ad tau - tau^2 d_tau (t even).
Derivation mstar_even(const PowerSeries& u, int maxlen);
/// m* of an odd structure: v(t) d_t + w(t) d_tau + ad tau - tau^2 d_tau (t odd).
Derivation mstar_odd(const PowerSeries& v, const PowerSeries& w, int maxlen);
/// (A + tau^2) d_tau + ([tau, t] + B) d_t for series A, B in t.
Derivation unital_derivation(const PowerSeries& a, const PowerSeries& b, int maxlen, bool t_odd);

struct SquareZeroResult {
    bool ok = true;
    std::string generator;     // "T" or "t" for the first failing value
    std::string failing_word;  // first word with nonzero coefficient
    RingElem coefficient;
    NCSeries on_tau;           // xi(xi(tau))
    NCSeries on_t;             // xi(xi(t))
};

/// Evaluates xi(xi(tau)) and xi(xi(t)).
SquareZeroResult check_square_zero(const Derivation& xi);

/// Continuous endomorphism tau -> image_tau, t -> image_t (images without
/// constant term, parities matching the generators).
struct NCEndo {
    NCSeries image_tau;
    NCSeries image_t;

    static NCEndo identity(Ring ring, int maxlen, bool t_odd);
    /// tau -> tau + G(t), t -> F(t).
    static NCEndo normalized(const PowerSeries& g, const PowerSeries& f, int maxlen, bool t_odd);

    bool t_odd() const { return image_tau.t_odd(); }
    int maxlen() const { return std::min(image_tau.maxlen(), image_t.maxlen()); }
    Ring ring() const { return image_tau.ring(); }
    /// image_tau - tau and image_t are free of tau.
    bool is_normalized() const;

    bool agrees_with(const NCEndo& b) const {
        return image_tau.agrees_with(b.image_tau) && image_t.agrees_with(b.image_t);
    }
};

/// Substitution homomorphism x(tau, t) -> x(phi(tau), phi(t)).
NCSeries apply_endo(const NCEndo& phi, const NCSeries& x);

/// (phi o psi)(g) = phi(psi(g)).
NCEndo compose_endo(const NCEndo& phi, const NCEndo& psi);

/// phi^{-1}; closed form (-G(F^{-1}), F^{-1}) for normalized phi, Newton
/// iteration on the linear part otherwise. Throws NotInvertible.
NCEndo endo_inverse(const NCEndo& phi);
/// Always uses the generic Newton iteration.
NCEndo endo_inverse_newton(const NCEndo& phi);

/// phi o xi o phi^{-1} on generators.
Derivation conjugate(const NCEndo& phi, const Derivation& xi);

}  // namespace moore
