#include "moore/parse.hpp"

#include <cctype>
#include <climits>
#include <map>
#include <string>

namespace moore {

namespace {

// polynomial in t with coefficients in the ring, degrees above `trunc` dropped
using Poly = std::map<int, RingElem>;

class Parser {
public:
    Parser(const Ring& ring, std::string_view text, bool allow_t, int trunc)
        : ring_(ring), text_(text), allow_t_(allow_t), trunc_(trunc) {}

    Poly parse_all() {
        skip();
        if (pos_ == text_.size()) fail("empty expression");
        Poly p = expr();
        skip();
        if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void add_into(Poly& acc, const Poly& p, bool negate) const {
        for (const auto& [d, c] : p) {
            RingElem& slot = acc.try_emplace(d, ring_.zero()).first->second;
            if (negate) slot -= c;
            else slot += c;
        }
    }

    Poly multiply(const Poly& a, const Poly& b) const {
        Poly out;
        for (const auto& [da, ca] : a)
            for (const auto& [db, cb] : b) {
                if (da + db > trunc_) continue;
                RingElem& slot = out.try_emplace(da + db, ring_.zero()).first->second;
                slot += ca * cb;
            }
        return out;
    }

    Poly expr() {
        Poly acc;
        bool negate = false;
        if (accept('-')) negate = true;
        else accept('+');
        add_into(acc, term(), negate);
        while (true) {
            if (accept('+')) negate = false;
            else if (accept('-')) negate = true;
            else break;
            add_into(acc, term(), negate);
        }
        return acc;
    }

    Poly term() {
        Poly p = factor();
        while (accept('*')) p = multiply(p, factor());
        return p;
    }

    std::string digits() {
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return std::string(text_.substr(start, pos_ - start));
    }

    int exponent() {
        skip();
        const std::size_t start = pos_;
        bool negative = accept('-');
        std::string d = digits();
        if (d.size() > 9) {
            pos_ = start;
            fail("exponent out of range");
        }
        int e = std::stoi(d);
        return negative ? -e : e;
    }

    Poly constant(const RingElem& c) const {
        Poly p;
        if (!c.is_zero()) p.emplace(0, c);
        return p;
    }

    Poly factor() {
        skip();
        if (pos_ == text_.size()) fail("unexpected end of input");
        const std::size_t start = pos_;
        const char c = text_[pos_];
        if (accept('(')) {
            Poly p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpz_class num(digits());
            mpz_class den(1);
            if (accept('/')) {
                const std::size_t den_pos = pos_;
                den = mpz_class(digits());
                if (den == 0) {
                    pos_ = den_pos;
                    fail("zero denominator");
                }
            }
            try {
                return constant(ring_.from_rational(mpq_class(num, den)));
            } catch (const Error& e) {
                pos_ = start;
                fail(std::string("literal not in ring: ") + e.what());
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            int e = 1;
            std::size_t exp_pos = pos_;
            if (accept('^')) {
                skip();
                exp_pos = pos_;
                e = exponent();
            }
            if (name == "t") {
                if (!allow_t_) {
                    pos_ = start;
                    fail("'t' is not allowed in a coefficient");
                }
                if (e < 0) {
                    pos_ = exp_pos;
                    fail("negative power of t");
                }
                Poly p;
                if (e <= trunc_) p.emplace(e, ring_.one());
                return p;
            }
            if (name == "v") {
                if (!ring_.laurent()) {
                    pos_ = start;
                    fail("ring " + ring_.spec() + " has no variable v");
                }
                return constant(ring_.v_power(e));
            }
            const auto& syms = ring_.symbols();
            for (std::size_t i = 0; i < syms.size(); ++i)
                if (syms[i] == name) {
                    if (e < 0) {
                        pos_ = exp_pos;
                        fail("negative power of " + name);
                    }
                    return constant(ring_.symbol(i).pow(static_cast<unsigned>(e)));
                }
            pos_ = start;
            fail("unknown name '" + name + "'");
        }
        fail(std::string("unexpected '") + c + "'");
    }

    const Ring& ring_;
    std::string_view text_;
    bool allow_t_;
    int trunc_;
    std::size_t pos_ = 0;
};

}  // namespace

RingElem parse_ring_elem(const Ring& ring, std::string_view text) {
    Poly p = Parser(ring, text, false, 0).parse_all();
    auto it = p.find(0);
    return it == p.end() ? ring.zero() : it->second;
}

PowerSeries parse_series(const Ring& ring, std::string_view text, int trunc) {
    if (trunc < 0) throw Error(ErrorCode::InvalidArgument, "truncation must be non-negative");
    Poly p = Parser(ring, text, true, trunc).parse_all();
    PowerSeries s(ring, trunc);
    for (auto& [d, c] : p) s.set_coeff(d, std::move(c));
    return s;
}

}  // namespace moore
