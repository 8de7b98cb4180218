#ifndef GBE_RATIONAL_HPP
#define GBE_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <utility>

#include "gbe/common.hpp"

namespace gbe {

using Int = boost::multiprecision::cpp_int;

// Exact rational number. Always in lowest terms, denominator > 0, zero is 0/1.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long v) : num_(v), den_(1) {} // NOLINT: implicit by design
    explicit Rat(Int v) : num_(std::move(v)), den_(1) {}
    Rat(Int num, Int den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
    Rat(long num, long den) : num_(num), den_(den) { normalize(); }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_ == 1 && num_ == 1; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_.sign(); }

    Rat operator-() const {
        Rat r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    Rat& operator+=(const Rat& o) {
        if (den_ == 1 && o.den_ == 1) {
            num_ += o.num_;
            return *this;
        }
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rat& operator-=(const Rat& o) {
        if (den_ == 1 && o.den_ == 1) {
            num_ -= o.num_;
            return *this;
        }
        num_ = num_ * o.den_ - o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rat& operator*=(const Rat& o) {
        if (den_ == 1 && o.den_ == 1) {
            num_ *= o.num_;
            return *this;
        }
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rat& operator/=(const Rat& o) {
        GBE_CHECK(!o.is_zero(), "Rat: division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }

    Rat abs() const {
        Rat r = *this;
        if (r.num_ < 0) r.num_ = -r.num_;
        return r;
    }

    Rat inverse() const {
        GBE_CHECK(!is_zero(), "Rat: inverse of zero");
        Rat r;
        r.num_ = den_;
        r.den_ = num_;
        if (r.den_ < 0) {
            r.num_ = -r.num_;
            r.den_ = -r.den_;
        }
        return r;
    }

    Rat pow(unsigned e) const {
        Rat r(1);
        Rat base = *this;
        while (e) {
            if (e & 1u) r *= base;
            base *= base;
            e >>= 1u;
        }
        return r;
    }

    double to_double() const { return num_.convert_to<double>() / den_.convert_to<double>(); }

    // Canonical text form "p/q", with "/q" omitted when q = 1.
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) {
            s += '/';
            s += den_.str();
        }
        return s;
    }

private:
    void normalize() {
        GBE_CHECK(!den_.is_zero(), "Rat: zero denominator");
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (den_ == 1) return;
        Int g = boost::multiprecision::gcd(num_, den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Int num_;
    Int den_;
};

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Rat binomial(unsigned n, unsigned k) {
    if (k > n) return Rat(0);
    Int r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return Rat(r);
}

inline Rat factorial(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return Rat(r);
}

} // namespace gbe

#endif
