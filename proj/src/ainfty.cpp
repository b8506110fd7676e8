#include "moore/ainfty.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "moore/error.hpp"

namespace moore {

// ---------------------------------------------------------------------------
// GradedBasis

GradedBasis GradedBasis::make(std::vector<std::string> names, std::vector<int> degrees, int unit) {
    if (names.size() != degrees.size() || names.empty())
        throw Error(ErrorCode::InvalidArgument, "basis names and degrees differ in length");
    std::set<std::string> seen(names.begin(), names.end());
    if (seen.size() != names.size()) throw Error(ErrorCode::InvalidArgument, "duplicate basis name");
    if (unit < 0 || unit >= static_cast<int>(names.size()) || degrees[unit] != 0)
        throw Error(ErrorCode::InvalidArgument, "unit must be a basis element of degree 0");
    GradedBasis b;
    b.names = std::move(names);
    b.degrees = std::move(degrees);
    b.unit = unit;
    return b;
}

GradedBasis GradedBasis::two_cell(int d) { return make({"1", "y"}, {0, d + 1}, 0); }

int GradedBasis::index_of(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw Error(ErrorCode::BasisMismatch, "unknown basis element '" + name + "'");
    return static_cast<int>(it - names.begin());
}

int bar_parity(const GradedBasis& basis, const BarWord& w) {
    int p = 0;
    for (int g : w) p ^= basis.suspended_parity(g);
    return p;
}

std::string bar_word_str(const GradedBasis& basis, const BarWord& w) {
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "|";
        s += basis.names[w[i]];
    }
    return s + "]";
}

std::string tensor_str(const GradedBasis& basis, const TensorExpr& e) {
    if (e.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : e) {
        if (!first) s += " + ";
        first = false;
        if (!c.is_one()) s += "(" + c.str() + ")*";
        s += bar_word_str(basis, w);
    }
    return s;
}

namespace {

using Table = std::map<BarWord, std::vector<RingElem>>;

void accumulate(Table& t, const BarWord& w, int out, const RingElem& c, int size, const Ring& ring) {
    if (c.is_zero()) return;
    auto it = t.find(w);
    if (it == t.end()) it = t.emplace(w, std::vector<RingElem>(size, ring.zero())).first;
    it->second[out] += c;
    for (const auto& x : it->second)
        if (!x.is_zero()) return;
    t.erase(it);
}

void accumulate(TensorExpr& e, const BarWord& w, const RingElem& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = e.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) e.erase(it);
    }
}

int prefix_parity(const GradedBasis& basis, const BarWord& w, int k) {
    int p = 0;
    for (int l = 0; l < k; ++l) p ^= basis.suspended_parity(w[l]);
    return p;
}

/// For each output generator, the words whose value has a nonzero coefficient on it.
std::vector<std::vector<std::pair<const BarWord*, const RingElem*>>> index_by_output(const Table& t, int size) {
    std::vector<std::vector<std::pair<const BarWord*, const RingElem*>>> idx(size);
    for (const auto& [w, val] : t)
        for (int g = 0; g < size; ++g)
            if (!val[g].is_zero()) idx[g].push_back({&w, &val[g]});
    return idx;
}

/// Core of (big): sum over entries of m and insertion slots.
Table compose_tables(const Table& m, const Table& n, int n_parity, const GradedBasis& basis, const Ring& ring,
                     int max_arity) {
    const int size = basis.size();
    Table out;
    auto idx = index_by_output(n, size);
    for (const auto& [v, mv] : m) {
        const int i = static_cast<int>(v.size());
        for (int k = 0; k < i; ++k) {
            const bool negate = (n_parity & prefix_parity(basis, v, k)) != 0;
            for (const auto& [u, coeff] : idx[v[k]]) {
                const int arity = i + static_cast<int>(u->size()) - 1;
                if (arity > max_arity) continue;
                BarWord w;
                w.reserve(arity);
                w.insert(w.end(), v.begin(), v.begin() + k);
                w.insert(w.end(), u->begin(), u->end());
                w.insert(w.end(), v.begin() + k + 1, v.end());
                RingElem scale = negate ? -*coeff : *coeff;
                for (int g = 0; g < size; ++g)
                    if (!mv[g].is_zero()) accumulate(out, w, g, scale * mv[g], size, ring);
            }
        }
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Cochain

Cochain::Cochain(Ring ring, GradedBasis basis, int parity, int bound)
    : ring_(ring), basis_(std::move(basis)), parity_(parity & 1), bound_(bound) {
    if (bound < 0) throw Error(ErrorCode::InvalidArgument, "arity bound must be non-negative");
}

RingElem Cochain::coeff(const BarWord& w, int out) const {
    auto it = entries_.find(w);
    return it == entries_.end() ? ring_.zero() : it->second[out];
}

std::vector<RingElem> Cochain::eval(const BarWord& w) const {
    auto it = entries_.find(w);
    return it == entries_.end() ? std::vector<RingElem>(basis_.size(), ring_.zero()) : it->second;
}

void Cochain::add(const BarWord& w, int out, const RingElem& c) {
    if (static_cast<int>(w.size()) > bound_) return;
    for (int g : w)
        if (g < 0 || g >= basis_.size()) throw Error(ErrorCode::BasisMismatch, "bar word outside the basis");
    if (out < 0 || out >= basis_.size()) throw Error(ErrorCode::BasisMismatch, "output outside the basis");
    accumulate(entries_, w, out, c, basis_.size(), ring_);
}

MultiComponent Cochain::component(int k) const {
    MultiComponent mc;
    mc.arity = k;
    mc.parity = parity_;
    for (const auto& [w, val] : entries_)
        if (static_cast<int>(w.size()) == k) mc.table.emplace(w, val);
    return mc;
}

int Cochain::max_arity() const {
    int best = -1;
    for (const auto& [w, val] : entries_) best = std::max(best, static_cast<int>(w.size()));
    return best;
}

bool Cochain::is_homogeneous() const {
    for (const auto& [w, val] : entries_) {
        const int p = bar_parity(basis_, w) ^ parity_;
        for (int g = 0; g < basis_.size(); ++g)
            if (!val[g].is_zero() && basis_.suspended_parity(g) != p) return false;
    }
    return true;
}

Cochain Cochain::truncated(int bound) const {
    Cochain c(ring_, basis_, parity_, std::min(bound, bound_));
    for (const auto& [w, val] : entries_)
        if (static_cast<int>(w.size()) <= c.bound_) c.entries_.emplace(w, val);
    return c;
}

void Cochain::check_compatible(const Cochain& b) const {
    if (ring_ != b.ring_)
        throw Error(ErrorCode::IncompatibleRing, "cochains over " + ring_.spec() + " and " + b.ring_.spec());
    if (!(basis_ == b.basis_)) throw Error(ErrorCode::BasisMismatch, "cochains on different bases");
}

Cochain& Cochain::operator+=(const Cochain& b) {
    check_compatible(b);
    if (parity_ != b.parity_ && !is_zero() && !b.is_zero())
        throw Error(ErrorCode::ParityMismatch, "sum of cochains of different parity");
    if (is_zero()) parity_ = b.parity_;
    if (b.bound_ < bound_) *this = truncated(b.bound_);
    for (const auto& [w, val] : b.entries_) {
        if (static_cast<int>(w.size()) > bound_) continue;
        for (int g = 0; g < basis_.size(); ++g) accumulate(entries_, w, g, val[g], basis_.size(), ring_);
    }
    return *this;
}

Cochain& Cochain::operator-=(const Cochain& b) { return *this += -b; }

Cochain Cochain::operator-() const {
    Cochain c = *this;
    for (auto& [w, val] : c.entries_)
        for (auto& x : val) x = -x;
    return c;
}

Cochain operator*(const RingElem& s, const Cochain& a) {
    Cochain c(a.ring_, a.basis_, a.parity_, a.bound_);
    for (const auto& [w, val] : a.entries_)
        for (int g = 0; g < a.basis_.size(); ++g) accumulate(c.entries_, w, g, s * val[g], a.basis_.size(), a.ring_);
    return c;
}

bool operator==(const Cochain& a, const Cochain& b) {
    return a.ring_ == b.ring_ && a.basis_ == b.basis_ && a.parity_ == b.parity_ && a.bound_ == b.bound_ &&
           a.entries_ == b.entries_;
}

bool Cochain::agrees_with(const Cochain& b) const {
    const int n = std::min(bound_, b.bound_);
    return truncated(n).entries_ == b.truncated(n).entries_;
}

std::string Cochain::str() const {
    if (entries_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, val] : entries_) {
        if (!first) os << "\n";
        first = false;
        os << bar_word_str(basis_, w) << " -> ";
        bool firstg = true;
        for (int g = 0; g < basis_.size(); ++g) {
            if (val[g].is_zero()) continue;
            if (!firstg) os << " + ";
            firstg = false;
            os << "(" << val[g].str() << ")*[" << basis_.names[g] << "]";
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Coderivations and morphisms on bar words

TensorExpr coderivation_extend(const Cochain& c, const BarWord& w) {
    const GradedBasis& basis = c.basis();
    const int n = static_cast<int>(w.size());
    TensorExpr out;
    for (int i = 0; i <= n; ++i) {
        const bool negate = (c.parity() & prefix_parity(basis, w, i)) != 0;
        for (int k = 0; i + k <= n; ++k) {
            if (k > c.bound()) break;
            BarWord arg(w.begin() + i, w.begin() + i + k);
            auto it = c.entries().find(arg);
            if (it == c.entries().end()) continue;
            for (int g = 0; g < basis.size(); ++g) {
                if (it->second[g].is_zero()) continue;
                BarWord r(w.begin(), w.begin() + i);
                r.push_back(g);
                r.insert(r.end(), w.begin() + i + k, w.end());
                accumulate(out, r, negate ? -it->second[g] : it->second[g]);
            }
        }
    }
    return out;
}

TensorExpr coderivation_apply(const Cochain& c, const TensorExpr& e) {
    TensorExpr out;
    for (const auto& [w, coeff] : e)
        for (const auto& [r, x] : coderivation_extend(c, w)) accumulate(out, r, coeff * x);
    return out;
}

TensorExpr morphism_extend(const Cochain& f, const BarWord& w) {
    if (f.parity() != 0) throw Error(ErrorCode::ParityMismatch, "morphism components must be even");
    const GradedBasis& basis = f.basis();
    const int n = static_cast<int>(w.size());
    // partial[j]: image of the prefix of length j
    std::vector<TensorExpr> partial(n + 1);
    partial[0][BarWord{}] = f.ring().one();
    for (int j = 1; j <= n; ++j) {
        for (int i = 1; i <= j && i <= f.bound(); ++i) {
            BarWord arg(w.begin() + (j - i), w.begin() + j);
            auto it = f.entries().find(arg);
            if (it == f.entries().end()) continue;
            for (const auto& [head, c] : partial[j - i]) {
                for (int g = 0; g < basis.size(); ++g) {
                    if (it->second[g].is_zero()) continue;
                    BarWord r = head;
                    r.push_back(g);
                    accumulate(partial[j], r, c * it->second[g]);
                }
            }
        }
    }
    return partial[n];
}

TensorExpr bar_contraction(const GradedBasis& basis, const TensorExpr& e) {
    TensorExpr out;
    for (const auto& [w, c] : e) {
        BarWord r{basis.unit};
        r.insert(r.end(), w.begin(), w.end());
        accumulate(out, r, c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Composition and commutators

MultiComponent compose_components(const MultiComponent& m, const MultiComponent& n, const GradedBasis& basis,
                                  const Ring& ring) {
    MultiComponent out;
    out.arity = m.arity + n.arity - 1;
    out.parity = (m.parity + n.parity) & 1;
    if (m.arity == 0) return out;
    out.table = compose_tables(m.table, n.table, n.parity, basis, ring, out.arity);
    return out;
}

Cochain compose(const Cochain& m, const Cochain& n) {
    m.check_compatible(n);
    bool n_has_arity0 = false;
    for (const auto& [w, val] : n.entries())
        if (w.empty()) n_has_arity0 = true;
    int bound = std::min(m.bound(), n.bound());
    if (n_has_arity0) bound = std::min(bound, m.bound() - 1);
    Cochain out(m.ring(), m.basis(), m.parity() + n.parity(), std::max(bound, 0));
    if (bound < 0) return out;
    Table t = compose_tables(m.entries(), n.entries(), n.parity(), m.basis(), m.ring(), bound);
    for (const auto& [w, val] : t)
        for (int g = 0; g < m.basis().size(); ++g) out.add(w, g, val[g]);
    return out;
}

Cochain commutator(const Cochain& a, const Cochain& b) {
    Cochain ab = compose(a, b);
    Cochain ba = compose(b, a);
    return (a.parity() & b.parity()) ? ab + ba : ab - ba;
}

Cochain stasheff_defect(const AInfStructure& m) { return compose(m, m); }

bool satisfies_stasheff(const AInfStructure& m) { return stasheff_defect(m).is_zero(); }

namespace {

/// Calls f on every bar word over the basis with arity in [lo, hi].
template <class F>
void for_each_word(int size, int lo, int hi, F&& f) {
    for (int n = lo; n <= hi; ++n) {
        BarWord w(n, 0);
        for (;;) {
            f(w);
            int pos = n - 1;
            while (pos >= 0 && w[pos] == size - 1) w[pos--] = 0;
            if (pos < 0) break;
            ++w[pos];
        }
    }
}

bool contains_unit(const BarWord& w, int unit, int first) {
    for (int i = 0; i < first && i < static_cast<int>(w.size()); ++i)
        if (w[i] == unit) return true;
    return false;
}

}  // namespace

bool is_unital(const AInfStructure& m) {
    const GradedBasis& basis = m.basis();
    const Ring& r = m.ring();
    const int e = basis.unit;
    if (m.bound() >= 2) {
        for (int a = 0; a < basis.size(); ++a) {
            const int unsuspended = basis.suspended_parity(a) ^ 1;
            std::vector<RingElem> left = m.eval({e, a});
            std::vector<RingElem> right = m.eval({a, e});
            for (int g = 0; g < basis.size(); ++g) {
                RingElem want = g == a ? r.one() : r.zero();
                if (left[g] != want) return false;
                if (right[g] != (unsuspended ? -want : want)) return false;
            }
        }
    }
    for (const auto& [w, val] : m.entries())
        if (w.size() != 2 && contains_unit(w, e, static_cast<int>(w.size()))) return false;
    return true;
}

bool is_i_normalized(const Cochain& c, int i) {
    for (const auto& [w, val] : c.entries())
        if (contains_unit(w, c.basis().unit, i)) return false;
    return true;
}

bool is_normalized(const Cochain& c) { return is_i_normalized(c, c.bound()); }

Cochain hochschild_differential(const Cochain& c, const AInfStructure& m) { return commutator(c, m); }

Cochain s_op(int i, const Cochain& c, InsertSign reading) {
    const GradedBasis& basis = c.basis();
    Cochain out(c.ring(), basis, c.parity() + 1, std::max(c.bound() - 1, 0));
    for (const auto& [w, val] : c.entries()) {
        const int n = static_cast<int>(w.size());
        if (n < i + 1 || w[i] != basis.unit) continue;
        BarWord r(w.begin(), w.begin() + i);
        r.insert(r.end(), w.begin() + i + 1, w.end());
        const int p = reading == InsertSign::Prefix ? prefix_parity(basis, w, i) : bar_parity(basis, r);
        const bool negate = (p ^ 1) != 0;
        for (int g = 0; g < basis.size(); ++g) out.add(r, g, negate ? -val[g] : val[g]);
    }
    return out;
}

Cochain h_op(int i, const Cochain& c, const AInfStructure& m, InsertSign reading) {
    Cochain sc = s_op(i, c, reading);
    Cochain dc = hochschild_differential(c, m);
    return c - hochschild_differential(sc, m) - s_op(i, dc, reading);
}

NormalizationResult normalize_cochain(const Cochain& c, const AInfStructure& m, int upto) {
    NormalizationResult res;
    Cochain cur = c;
    Cochain homotopy(c.ring(), c.basis(), c.parity() + 1, c.bound());
    Cochain defect(c.ring(), c.basis(), c.parity(), c.bound());
    for (int i = 0; i < upto; ++i) {
        Cochain sc = s_op(i, cur);
        Cochain sdc = s_op(i, hochschild_differential(cur, m));
        homotopy += sc;
        defect += sdc;
        cur = cur - hochschild_differential(sc, m) - sdc;
        ++res.steps;
    }
    res.normalized = cur;
    res.homotopy = homotopy;
    res.defect = defect;
    return res;
}

// ---------------------------------------------------------------------------
// Dualization

namespace {

void require_two_cell(const GradedBasis& basis, bool t_odd) {
    if (basis.size() != 2 || basis.unit != 0)
        throw Error(ErrorCode::BasisMismatch, "dualization needs the two-cell basis {1, y}");
    if (basis.suspended_parity(1) != (t_odd ? 1 : 0))
        throw Error(ErrorCode::BasisMismatch, "parity of y does not match the parity of t");
}

}  // namespace

Cochain dualize(const Derivation& xi, const GradedBasis& basis) {
    require_two_cell(basis, xi.t_odd());
    Cochain out(xi.ring(), basis, xi.parity, xi.maxlen());
    auto fill = [&](const NCSeries& s, int g) {
        for (const auto& [w, c] : s.terms()) {
            BarWord b(w.length());
            for (int i = 0; i < w.length(); ++i) b[i] = w.letter_is_t(i) ? 1 : 0;
            out.add(b, g, c);
        }
    };
    fill(xi.on_tau, 0);
    fill(xi.on_t, 1);
    return out;
}

Derivation undualize(const Cochain& c) {
    const bool t_odd = c.basis().size() == 2 && c.basis().suspended_parity(1) == 1;
    require_two_cell(c.basis(), t_odd);
    if (c.bound() > Word::kMaxLength) throw Error(ErrorCode::InvalidArgument, "arity bound exceeds word length");
    NCSeries on_tau(c.ring(), c.bound(), t_odd);
    NCSeries on_t(c.ring(), c.bound(), t_odd);
    for (const auto& [w, val] : c.entries()) {
        std::string letters;
        for (int g : w) letters += g == 1 ? 't' : 'T';
        Word word = Word::parse(letters);
        on_tau.add_term(word, val[0]);
        on_t.add_term(word, val[1]);
    }
    Derivation xi;
    xi.on_tau = on_tau;
    xi.on_t = on_t;
    xi.parity = c.parity();
    return xi;
}

AInfStructure moore_structure(const MooreAlgebra& m, int arity) {
    return dualize(moore_mstar(m, arity), GradedBasis::two_cell(m.d));
}

}  // namespace moore
