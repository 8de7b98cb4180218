#ifndef GBE_SERIALIZE_HPP
#define GBE_SERIALIZE_HPP

#include <sstream>
#include <string>

#include "gbe/ratfn.hpp"

namespace gbe {

// Canonical, bit-exact round-trippable text formats.
//
//   Rat     p/q                 (q omitted when 1)
//   MPoly   ordered term list   -3/2*T^2*x1*x3^4 + 5*x2 + 7
//   YPoly   mask-prefixed parts 1:{...}; y1*y3:{...}
//   DenForm scalar | y:[a1,...,an] | d:[(i,j,b),...]
//   RatFn   n=<points> | num=<ypoly> | den=<denform>

inline std::string to_text(const MPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << t.second.str();
        if (t.first.t()) {
            os << "*T";
            if (t.first.t() > 1) os << '^' << static_cast<int>(t.first.t());
        }
        for (int i = 1; i <= p.npoints(); ++i) {
            uint8_t e = t.first.x(i);
            if (!e) continue;
            os << "*x" << i;
            if (e > 1) os << '^' << static_cast<int>(e);
        }
    }
    return os.str();
}

inline std::string to_text(const YPoly& y) {
    if (y.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& p : y.parts()) {
        if (!first) os << "; ";
        first = false;
        if (p.first == 0) {
            os << "1:";
        } else {
            bool fy = true;
            for (int i = 1; i <= y.npoints(); ++i)
                if ((p.first >> i) & 1u) {
                    if (!fy) os << '*';
                    fy = false;
                    os << 'y' << i;
                }
            os << ':';
        }
        os << '{' << to_text(p.second) << '}';
    }
    return os.str();
}

inline std::string to_text(const DenForm& d) {
    std::ostringstream os;
    os << d.scalar().str() << " | y:[";
    for (int i = 1; i <= d.npoints(); ++i) {
        if (i > 1) os << ',';
        os << d.ypow(i);
    }
    os << "] | d:[";
    bool first = true;
    for (int j = 2; j <= d.npoints(); ++j)
        for (int i = 1; i < j; ++i) {
            int b = d.diffpow(i, j);
            if (!b) continue;
            if (!first) os << ',';
            first = false;
            os << '(' << i << ',' << j << ',' << b << ')';
        }
    os << ']';
    return os.str();
}

inline std::string to_text(const RatFn& f) {
    std::ostringstream os;
    os << "n=" << f.npoints() << " | num=" << to_text(f.num()) << " | den=" << to_text(f.den());
    return os.str();
}

namespace detail {

class TextCursor {
public:
    explicit TextCursor(const std::string& s) : s_(s) {}

    void expect(const std::string& lit) {
        if (s_.compare(pos_, lit.size(), lit) != 0)
            throw std::runtime_error("parse: expected '" + lit + "' at " + context());
        pos_ += lit.size();
    }
    bool try_consume(const std::string& lit) {
        if (s_.compare(pos_, lit.size(), lit) != 0) return false;
        pos_ += lit.size();
        return true;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    bool at_end() const { return pos_ >= s_.size(); }

    long long integer() {
        size_t start = pos_;
        if (peek() == '-') ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start || (pos_ == start + 1 && s_[start] == '-'))
            throw std::runtime_error("parse: expected integer at " + context());
        return std::stoll(s_.substr(start, pos_ - start));
    }

    Int big_integer() {
        size_t start = pos_;
        if (peek() == '-') ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start || (pos_ == start + 1 && s_[start] == '-'))
            throw std::runtime_error("parse: expected integer at " + context());
        return Int(s_.substr(start, pos_ - start));
    }

    Rat rational() {
        Int n = big_integer();
        if (try_consume("/")) {
            Int d = big_integer();
            return Rat(n, d);
        }
        return Rat(std::move(n));
    }

    std::string context() const {
        return "'" + s_.substr(pos_, 24) + "' (offset " + std::to_string(pos_) + ")";
    }

private:
    const std::string& s_;
    size_t pos_ = 0;
};

inline MPoly parse_mpoly(TextCursor& c, int npoints) {
    if (c.try_consume("0") && c.peek() != '*' && !std::isdigit(static_cast<unsigned char>(c.peek())))
        return MPoly(npoints);
    std::vector<MPoly::Term> terms;
    for (;;) {
        Rat coef = c.rational();
        VarExp m;
        while (c.try_consume("*")) {
            int var;
            if (c.try_consume("T")) {
                var = 0;
            } else {
                c.expect("x");
                var = static_cast<int>(c.integer());
            }
            int e = 1;
            if (c.try_consume("^")) e = static_cast<int>(c.integer());
            m.e[static_cast<size_t>(var)] = static_cast<uint8_t>(m.e[static_cast<size_t>(var)] + e);
        }
        terms.emplace_back(m, std::move(coef));
        if (!c.try_consume(" + ")) break;
    }
    return MPoly::from_terms(npoints, std::move(terms));
}

inline YPoly parse_ypoly(TextCursor& c, int npoints) {
    if (c.try_consume("0") && c.peek() != ':') return YPoly(npoints);
    std::vector<YPoly::Part> parts;
    for (;;) {
        YMask mask = 0;
        if (!c.try_consume("1:")) {
            for (;;) {
                c.expect("y");
                mask = static_cast<YMask>(mask | (1u << static_cast<int>(c.integer())));
                if (!c.try_consume("*")) break;
            }
            c.expect(":");
        }
        c.expect("{");
        MPoly p = parse_mpoly(c, npoints);
        c.expect("}");
        parts.emplace_back(mask, std::move(p));
        if (!c.try_consume("; ")) break;
    }
    return YPoly::from_parts(npoints, std::move(parts));
}

inline DenForm parse_denform(TextCursor& c, int npoints) {
    DenForm d(npoints);
    d.set_scalar(c.rational());
    c.expect(" | y:[");
    for (int i = 1; i <= npoints; ++i) {
        if (i > 1) c.expect(",");
        d.add_ypow(i, static_cast<int>(c.integer()));
    }
    c.expect("] | d:[");
    bool first = true;
    while (!c.try_consume("]")) {
        if (!first) c.expect(",");
        first = false;
        c.expect("(");
        int i = static_cast<int>(c.integer());
        c.expect(",");
        int j = static_cast<int>(c.integer());
        c.expect(",");
        int b = static_cast<int>(c.integer());
        c.expect(")");
        d.add_diffpow(i, j, b);
    }
    return d;
}

} // namespace detail

inline RatFn ratfn_from_text(const std::string& text) {
    detail::TextCursor c(text);
    c.expect("n=");
    int n = static_cast<int>(c.integer());
    GBE_CHECK(n >= 0 && n <= VarExp::kMaxPoints, "ratfn_from_text: bad point count");
    c.expect(" | num=");
    YPoly num = detail::parse_ypoly(c, n);
    c.expect(" | den=");
    DenForm den = detail::parse_denform(c, n);
    return RatFn(std::move(num), std::move(den));
}

} // namespace gbe

#endif
