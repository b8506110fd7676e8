#pragma once

// Seeded random generators for property suites.

#include <random>

#include "moore/ainfty.hpp"
#include "moore/rings.hpp"
#include "moore/series.hpp"

namespace moore::gen {

inline RingElem random_scalar(const Ring& r, std::mt19937_64& rng, long bound = 30) {
    std::uniform_int_distribution<long> d(-bound, bound);
    if (r.kind() == RingKind::Rationals) {
        std::uniform_int_distribution<long> den(1, 4);
        return r.from_rational(mpq_class(d(rng), den(rng)));
    }
    return r.from_int(d(rng));
}

inline RingElem random_unit(const Ring& r, std::mt19937_64& rng) {
    for (;;) {
        RingElem c = random_scalar(r, rng);
        if (is_unit(c)) return c;
    }
}

/// Random series with zero coefficients below `min_order`.
inline PowerSeries random_series(const Ring& r, int trunc, std::mt19937_64& rng, int min_order = 1) {
    PowerSeries s(r, trunc);
    for (int i = min_order; i <= trunc; ++i) s.set_coeff(i, random_scalar(r, rng));
    return s;
}

/// Random f with f(0)=0 and unit f_1.
inline PowerSeries random_automorphism(const Ring& r, int trunc, std::mt19937_64& rng) {
    PowerSeries f = random_series(r, trunc, rng, 2);
    f.set_coeff(1, random_unit(r, rng));
    return f;
}

/// Random series supported on powers i >= min_order with i = parity mod 2.
inline PowerSeries random_parity_series(const Ring& r, int trunc, std::mt19937_64& rng, int parity,
                                        int min_order = 1) {
    PowerSeries s(r, trunc);
    for (int i = min_order; i <= trunc; ++i)
        if ((i & 1) == parity) s.set_coeff(i, random_scalar(r, rng));
    return s;
}

/// Random homogeneous cochain with entries on arities lo..hi.
inline Cochain random_cochain(const Ring& r, const GradedBasis& b, int parity, int lo, int hi, int bound,
                              std::mt19937_64& rng, double density = 0.7) {
    Cochain c(r, b, parity, bound);
    std::bernoulli_distribution keep(density);
    for (int n = lo; n <= hi; ++n) {
        BarWord w(n, 0);
        for (;;) {
            const int p = bar_parity(b, w) ^ parity;
            for (int g = 0; g < b.size(); ++g)
                if (b.suspended_parity(g) == p && keep(rng)) c.add(w, g, random_scalar(r, rng));
            int pos = n - 1;
            while (pos >= 0 && w[pos] == b.size() - 1) w[pos--] = 0;
            if (pos < 0) break;
            ++w[pos];
        }
    }
    return c;
}

}  // namespace moore::gen
