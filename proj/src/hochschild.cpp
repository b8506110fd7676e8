#include "moore/hochschild.hpp"

#include <stdexcept>

#include "moore/error.hpp"
#include "moore/linalg.hpp"
#include "moore/noncomm.hpp"

namespace moore {

std::string torsion_name(Torsion t) {
    switch (t) {
        case Torsion::ResidueAlgebra: return "residue-algebra";
        case Torsion::TorsionFree: return "torsion-free";
        case Torsion::NotApplicable: return "not-applicable";
    }
    return "?";
}

namespace {

void require_even(const MooreAlgebra& m) {
    if (!m.is_even()) throw Error(ErrorCode::UnsupportedCase, "Hochschild cohomology is computed for even algebras");
}

bool vanishes_mod_pi(const PowerSeries& s) {
    for (int i = 0; i <= s.trunc(); ++i)
        if (!reduce_to_residue(s.coeff(i)).is_zero()) return false;
    return true;
}

}  // namespace

HHReport hh_closed_form(const MooreAlgebra& m) {
    require_even(m);
    const PowerSeries& u = m.u;
    const Ring r = u.ring();
    if (u.trunc() < 1 || !is_regular(u.coeff(1)))
        throw Error(ErrorCode::ZeroDivisor, "u_1 = " + (u.trunc() < 1 ? std::string("?") : u.coeff(1).str()) +
                                                " is a zero divisor");
    HHReport rep;
    rep.derivative = derivative(u);
    rep.quotient = r.spec() + "[[t]]/(" + rep.derivative.str() + ")";

    if (!r.has_uniformizer()) {
        rep.torsion = Torsion::NotApplicable;
        rep.rank = weierstrass_rank(rep.derivative);
        return rep;
    }

    const long p = r.prime();
    bool criterion = true;
    for (int i = 1; i <= u.trunc(); ++i)
        if (i % p != 0 && !reduce_to_residue(u.coeff(i)).is_zero()) criterion = false;
    rep.residue_criterion = criterion;

    const PowerSeries reduced = reduce_mod_pi(u);
    if (auto o = reduced.order()) {
        rep.mod_p_height = *o;
        rep.stated_index = *o;
    }

    if (vanishes_mod_pi(rep.derivative)) {
        if (!criterion) throw std::logic_error("u' = 0 mod pi but u is not a series in t^p mod pi");
        rep.torsion = Torsion::ResidueAlgebra;
        rep.quotient = r.residue_ring().spec() + "[[t]]";
        return rep;
    }
    if (criterion) throw std::logic_error("u is a series in t^p mod pi but u' is not 0 mod pi");

    rep.torsion = Torsion::TorsionFree;
    rep.rank = weierstrass_rank(rep.derivative);
    rep.ramification_index = rep.rank;
    if (*rep.rank > 0) {
        DistinguishedFactor f = weierstrass_factor(rep.derivative);
        if (f.precision < 1)
            throw Error(ErrorCode::NeedsHigherPrecision,
                        "distinguished factor of degree " + std::to_string(*rep.rank) + " needs truncation above " +
                            std::to_string(u.trunc()));
        rep.eisenstein = f.polynomial;
        rep.eisenstein_precision = f.precision;
        rep.eisenstein_verified = f.precision >= 2 && valuation(f.polynomial.coeff(0)) == 1;
    }
    rep.discrepancy = rep.stated_index && rep.stated_index != rep.rank;
    return rep;
}

HHReport hh_structure(const MooreAlgebra& m) {
    require_even(m);
    const Ring r = m.ring();
    if (!r.has_uniformizer()) throw Error(ErrorCode::NoUniformizer, "ramification analysis needs Z/p^K");
    if (m.u.trunc() < 1 || valuation(m.u.coeff(1)) != 1)
        throw Error(ErrorCode::InvalidArgument, "u_1 must be pi times a unit");
    return hh_closed_form(m);
}

HHBruteForce hh_bruteforce(const MooreAlgebra& m, int maxdeg) {
    require_even(m);
    if (maxdeg < 0) throw Error(ErrorCode::InvalidArgument, "maxdeg must be non-negative");
    PowerSeries u = m.u.ring().laurent() ? specialize_v(m.u) : m.u;
    const Ring r = u.ring();
    if (!r.is_field()) throw Error(ErrorCode::NonFieldRing, "brute force needs Q or F_p, got " + m.u.ring().spec());
    if (u.trunc() < maxdeg + 1)
        throw Error(ErrorCode::NeedsHigherPrecision,
                    "maxdeg " + std::to_string(maxdeg) + " needs u to t^" + std::to_string(maxdeg + 1));
    // the differential on the quotient complex modulo t^{W+1}, W the known precision
    const int W = std::min(u.trunc(), Word::kMaxLength);
    const int n = maxdeg + 1;
    const int full = W + 1;
    const Derivation mstar = mstar_even(u.truncated(W), W);

    // coordinates: 0..W for t^j d_tau, full..full+W for t^j d_t
    Matrix d(r, 2 * full, 2 * full);
    for (int col = 0; col < 2 * full; ++col) {
        const bool on_tau = col < full;
        const int j = on_tau ? col : col - full;
        Derivation xi;
        NCSeries image = NCSeries::word(r, W, false, Word::t_power(j), r.one());
        xi.on_tau = on_tau ? image : NCSeries(r, W, false);
        xi.on_t = on_tau ? NCSeries(r, W, false) : image;
        xi.parity = on_tau ? 1 : 0;
        Derivation dxi = derivation_commutator(xi, mstar);
        if (!dxi.is_normalized()) throw std::logic_error("[xi, m*] of a normalized derivation involves tau");
        for (const auto& [w, c] : dxi.on_tau.terms()) d.at(w.length(), col) = c;
        for (const auto& [w, c] : dxi.on_t.terms()) d.at(full + w.length(), col) = c;
    }

    HHBruteForce out;
    out.maxdeg = maxdeg;
    out.d_squared_zero = (d * d).is_zero();
    for (int i = 0; i < 2 * full; ++i)
        for (int j = 0; j < 2 * full; ++j)
            if ((i < full) == (j < full) && !d.at(i, j).is_zero())
                throw std::logic_error("the differential does not exchange the two parities");

    // block (rows of one parity, columns of the other), rows limited to `rows`
    auto block = [&](int row0, int rows, int col0, int cols) {
        Matrix b(r, rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) b.at(i, j) = d.at(row0 + i, col0 + j);
        return b;
    };
    // cycles of degree <= maxdeg are detected against all known coefficients;
    // boundaries are taken in the quotient modulo t^{maxdeg+1}
    auto dims = [&](int self, int other) {
        Matrix cycles = kernel(block(other, full, self, n));
        Matrix bounds = block(self, n, other, n);
        std::vector<int> out_dims(n, 0);
        for (int c : leading_coordinates(cycles)) ++out_dims[c];
        for (int c : leading_coordinates(bounds)) --out_dims[c];
        for (int x : out_dims)
            if (x < 0) throw std::logic_error("boundaries are not cycles");
        return out_dims;
    };
    out.tau_dims = dims(0, full);
    out.t_dims = dims(full, 0);
    out.differential_rank = rank(block(0, n, full, n));
    return out;
}

std::vector<int> quotient_dims(const PowerSeries& u, int maxdeg) {
    const Ring r = u.ring();
    if (!r.is_field()) throw Error(ErrorCode::NonFieldRing, "quotient dimensions need Q or F_p");
    // gcd(u', t^{maxdeg+1}) in R[t] by the Euclidean algorithm
    auto trim = [](std::vector<RingElem>& p) {
        while (!p.empty() && p.back().is_zero()) p.pop_back();
    };
    const PowerSeries du = derivative(u);
    std::vector<RingElem> a(maxdeg + 2, r.zero());
    a[maxdeg + 1] = r.one();
    std::vector<RingElem> b;
    for (int i = 0; i <= std::min(du.trunc(), maxdeg); ++i) b.push_back(du.coeff(i));
    trim(b);
    while (!b.empty()) {
        const RingElem lead = inverse(b.back());
        while (a.size() >= b.size()) {
            trim(a);
            if (a.size() < b.size()) break;
            const RingElem f = a.back() * lead;
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
            trim(a);
        }
        std::swap(a, b);
    }
    trim(a);
    const int g = static_cast<int>(a.size()) - 1;  // degree of the gcd
    std::vector<int> dims(maxdeg + 1, 0);
    for (int j = 0; j < g && j <= maxdeg; ++j) dims[j] = 1;
    return dims;
}

}  // namespace moore
