#ifndef GBE_PARSE_HPP
#define GBE_PARSE_HPP

#include <cctype>
#include <string>

#include "gbe/ratfn.hpp"

namespace gbe {

// Recognize a value of the invertible shape c * prod y_i^{a_i} * prod (x_i-x_j)^{b_ij}
// and return its reciprocal. Throws when the value falls outside that class.
inline RatFn invert_factor(const RatFn& v) {
    GBE_CHECK(!v.is_zero(), "invert_factor: division by zero");
    int n = v.npoints();
    YPoly num = v.num();
    DenForm recog(n);
    for (int i = 1; i <= n; ++i)
        for (;;) {
            auto q = num.divexact_y(i);
            if (!q) break;
            num = std::move(*q);
            recog.add_ypow(i, 1);
        }
    for (int j = 2; j <= n; ++j)
        for (int i = 1; i < j; ++i)
            for (;;) {
                auto q = num.divexact_diff(i, j);
                if (!q) break;
                num = std::move(*q);
                recog.add_diffpow(i, j, 1);
            }
    if (!num.is_mpoly() || !num.as_mpoly().is_constant())
        throw std::runtime_error("invert_factor: divisor is not scalar*y^a*diff^b");
    Rat c = num.as_mpoly().constant_value();
    GBE_CHECK(!c.is_zero(), "invert_factor: zero divisor");
    bool neg = c.sign() < 0;
    recog.set_scalar((neg ? -c : c) / v.den().scalar());
    YPoly newnum = v.den().as_ypoly();
    if (neg) newnum = -newnum;
    return RatFn(std::move(newnum), std::move(recog));
}

namespace detail {

// Recursive-descent parser for hand-written expressions in T, x_i, y_i.
// Intended for transcribing formulas in tests and tools; multiplication is
// explicit ('*'), denominators must stay in the DenForm class.
class ExprParser {
public:
    ExprParser(const std::string& s, int npoints) : s_(s), n_(npoints) {}

    RatFn parse() {
        RatFn v = expr();
        skip_ws();
        if (pos_ != s_.size()) throw std::runtime_error("expr parse: trailing input at " + where());
        return v;
    }

private:
    RatFn expr() {
        skip_ws();
        bool neg = false;
        while (peek() == '+' || peek() == '-') {
            if (get() == '-') neg = !neg;
            skip_ws();
        }
        RatFn v = term();
        if (neg) v = -v;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            get();
            RatFn t = term();
            v = (c == '+') ? v + t : v - t;
        }
        return v;
    }

    RatFn term() {
        RatFn v = factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '*' && c != '/') break;
            get();
            RatFn f = factor();
            v = (c == '*') ? v * f : v * invert_factor(f);
        }
        return v;
    }

    RatFn factor() {
        RatFn b = base();
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            long e = integer();
            if (e < 0) throw std::runtime_error("expr parse: negative exponent");
            RatFn r = RatFn::constant(n_, Rat(1));
            for (long k = 0; k < e; ++k) r = r * b;
            return r;
        }
        return b;
    }

    RatFn base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            RatFn v = expr();
            skip_ws();
            if (get() != ')') throw std::runtime_error("expr parse: expected ')' at " + where());
            return v;
        }
        if (c == '-') {
            get();
            return -base();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return RatFn::constant(n_, Rat(integer()));
        if (c == 'T') {
            get();
            return RatFn::t_var(n_);
        }
        if (c == 'x' || c == 'y') {
            get();
            long i = integer();
            if (i < 1 || i > n_) throw std::runtime_error("expr parse: point index out of range");
            return c == 'x' ? RatFn::x_var(n_, static_cast<int>(i)) : RatFn::y_var(n_, static_cast<int>(i));
        }
        throw std::runtime_error("expr parse: unexpected input at " + where());
    }

    long integer() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw std::runtime_error("expr parse: expected integer at " + where());
        return std::stol(s_.substr(start, pos_ - start));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
    std::string where() const { return "'" + s_.substr(pos_, 24) + "'"; }

    const std::string& s_;
    int n_;
    size_t pos_ = 0;
};

} // namespace detail

// Parse a hand-written rational-function expression on `npoints` marked points.
inline RatFn parse_ratfn(const std::string& text, int npoints) {
    return detail::ExprParser(text, npoints).parse();
}

} // namespace gbe

#endif
