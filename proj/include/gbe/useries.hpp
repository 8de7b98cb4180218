#ifndef GBE_USERIES_HPP
#define GBE_USERIES_HPP

#include <map>

#include "gbe/ratfn.hpp"

namespace gbe {

// Truncated Laurent series in u = 1/x with coefficients in Q[T]
// (a zero-point MPoly context: the only variable is T).
class USeries {
public:
    explicit USeries(int hi) : hi_(hi) {}

    static USeries zero(int hi) { return USeries(hi); }

    int hi() const { return hi_; }
    bool is_zero() const { return c_.empty(); }
    int lo() const { return c_.empty() ? hi_ + 1 : c_.begin()->first; }
    const std::map<int, MPoly>& coeffs() const { return c_; }

    void add(int k, const MPoly& v) {
        if (k > hi_ || v.is_zero()) return;
        auto it = c_.find(k);
        if (it == c_.end()) {
            c_.emplace(k, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    MPoly coeff(int k) const {
        GBE_CHECK(k <= hi_, "USeries: order beyond validity");
        auto it = c_.find(k);
        return it == c_.end() ? MPoly(0) : it->second;
    }

    // First order with a nonzero coefficient, or hi()+1 when none is stored.
    int first_nonzero() const { return lo(); }

    friend USeries operator+(const USeries& a, const USeries& b) {
        USeries r(std::min(a.hi_, b.hi_));
        for (const auto& kv : a.c_) r.add(kv.first, kv.second);
        for (const auto& kv : b.c_) r.add(kv.first, kv.second);
        return r;
    }
    USeries& operator+=(const USeries& o) {
        *this = *this + o;
        return *this;
    }

    friend USeries operator*(const USeries& a, const USeries& b) {
        USeries r(std::min(a.hi_ + b.lo(), b.hi_ + a.lo()));
        for (const auto& ka : a.c_)
            for (const auto& kb : b.c_) {
                if (ka.first + kb.first > r.hi_) continue;
                r.add(ka.first + kb.first, ka.second * kb.second);
            }
        return r;
    }

    USeries mul_scalar(const Rat& s) const {
        USeries r(hi_);
        for (const auto& kv : c_) r.add(kv.first, kv.second.mul_scalar(s));
        return r;
    }

private:
    int hi_;
    std::map<int, MPoly> c_;
};

// (1 - 4T u^2)^{q/2} for any integer q, as an exact binomial series.
inline USeries curve_half_power(int q, int hi) {
    USeries s(hi);
    Rat coef(1);
    Rat half_q(q, 2);
    for (int k = 0; 2 * k <= hi; ++k) {
        if (!coef.is_zero()) s.add(2 * k, MPoly::monomial(0, VarExp::of_t(static_cast<uint8_t>(k)), coef * Rat(-4).pow(static_cast<unsigned>(k))));
        coef = coef * (half_q - Rat(k)) / Rat(k + 1);
    }
    return s;
}

// Asymptotic expansion of a one-point function at x -> infinity.
// f = (A(x,T) + B(x,T) y) / (s y^a) expands through
//   x^d -> u^{-d},   y^{-a} -> u^a (1-4Tu^2)^{-a/2},
//   y^{1-a} -> u^{a-1} (1-4Tu^2)^{(1-a)/2}.
inline USeries expand_inf(const RatFn& f, int K) {
    GBE_CHECK(f.npoints() == 1, "expand_inf: one-point functions only");
    int a = f.den().ypow(1);
    int maxd = 0;
    for (const auto& part : f.num().parts()) maxd = std::max(maxd, part.second.degree_in(1));
    USeries even_part = curve_half_power(-a, K + maxd + 1);
    USeries odd_part = curve_half_power(1 - a, K + maxd + 1);
    USeries out(K);
    Rat inv_s = f.den().scalar().inverse();
    for (const auto& part : f.num().parts()) {
        bool has_y = (part.first & 0b10) != 0;
        const USeries& h = has_y ? odd_part : even_part;
        int shift = has_y ? a - 1 : a;
        for (const auto& term : part.second.terms()) {
            int d = term.first.x(1);
            MPoly c = MPoly::monomial(0, VarExp::of_t(term.first.t()), term.second * inv_s);
            // contribute c * u^{shift - d} * h
            for (const auto& hk : h.coeffs()) {
                int k = shift - d + hk.first;
                if (k > K) continue;
                out.add(k, c * hk.second);
            }
        }
    }
    return out;
}

} // namespace gbe

#endif
