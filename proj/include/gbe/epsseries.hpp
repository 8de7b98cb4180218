#ifndef GBE_EPSSERIES_HPP
#define GBE_EPSSERIES_HPP

#include <map>

#include "gbe/parse.hpp"
#include "gbe/ratfn.hpp"

namespace gbe {

// Truncated Laurent series in a formal offset eps, with RatFn coefficients.
// Coefficients are known exactly for all orders <= hi(); arithmetic tracks
// how far validity survives.
class EpsSeries {
public:
    EpsSeries(int npoints, int hi) : npoints_(npoints), hi_(hi) {}

    static EpsSeries zero(int npoints, int hi) { return EpsSeries(npoints, hi); }
    static EpsSeries from_ratfn(RatFn f, int hi) {
        EpsSeries s(f.npoints(), hi);
        s.set(0, std::move(f));
        return s;
    }
    static EpsSeries from_coeffs(const std::vector<RatFn>& coeffs, int hi) {
        GBE_CHECK(!coeffs.empty(), "EpsSeries: empty coefficient list");
        EpsSeries s(coeffs[0].npoints(), hi);
        for (size_t k = 0; k < coeffs.size(); ++k) s.set(static_cast<int>(k), coeffs[k]);
        return s;
    }

    int npoints() const { return npoints_; }
    int hi() const { return hi_; }
    bool is_zero() const { return c_.empty(); }
    int lo() const { return c_.empty() ? hi_ + 1 : c_.begin()->first; }
    const std::map<int, RatFn>& coeffs() const { return c_; }

    void set(int k, RatFn v) {
        GBE_CHECK(k <= hi_, "EpsSeries: order beyond validity");
        if (v.is_zero())
            c_.erase(k);
        else
            c_[k] = std::move(v);
    }
    RatFn coeff(int k) const {
        GBE_CHECK(k <= hi_, "EpsSeries: order beyond validity");
        auto it = c_.find(k);
        return it == c_.end() ? RatFn::zero(npoints_) : it->second;
    }

    EpsSeries shift(int d) const {
        EpsSeries r(npoints_, hi_ + d);
        for (const auto& kv : c_) r.c_.emplace(kv.first + d, kv.second);
        return r;
    }

    EpsSeries mul_ratfn(const RatFn& f) const {
        EpsSeries r(npoints_, hi_);
        if (f.is_zero()) return r;
        for (const auto& kv : c_) {
            RatFn v = kv.second * f;
            if (!v.is_zero()) r.c_.emplace(kv.first, std::move(v));
        }
        return r;
    }

    friend EpsSeries operator+(const EpsSeries& a, const EpsSeries& b) {
        GBE_CHECK(a.npoints_ == b.npoints_, "EpsSeries: context mismatch");
        EpsSeries r(a.npoints_, std::min(a.hi_, b.hi_));
        for (const auto& kv : a.c_)
            if (kv.first <= r.hi_) r.c_.emplace(kv.first, kv.second);
        for (const auto& kv : b.c_) {
            if (kv.first > r.hi_) continue;
            auto it = r.c_.find(kv.first);
            if (it == r.c_.end()) {
                r.c_.emplace(kv.first, kv.second);
            } else {
                it->second += kv.second;
                if (it->second.is_zero()) r.c_.erase(it);
            }
        }
        return r;
    }
    EpsSeries& operator+=(const EpsSeries& o) {
        *this = *this + o;
        return *this;
    }

    friend EpsSeries operator*(const EpsSeries& a, const EpsSeries& b) {
        GBE_CHECK(a.npoints_ == b.npoints_, "EpsSeries: context mismatch");
        // c_k needs a_i (i <= k - lo_b) and b_j (j <= k - lo_a)
        int hi = std::min(a.hi_ + b.lo(), b.hi_ + a.lo());
        EpsSeries r(a.npoints_, hi);
        for (const auto& ka : a.c_)
            for (const auto& kb : b.c_) {
                int k = ka.first + kb.first;
                if (k > hi) continue;
                RatFn v = ka.second * kb.second;
                if (v.is_zero()) continue;
                auto it = r.c_.find(k);
                if (it == r.c_.end()) {
                    r.c_.emplace(k, std::move(v));
                } else {
                    it->second += v;
                    if (it->second.is_zero()) r.c_.erase(it);
                }
            }
        return r;
    }

    EpsSeries pow(int e) const {
        EpsSeries r = from_ratfn(RatFn::constant(npoints_, Rat(1)), hi_);
        EpsSeries base = *this;
        while (e) {
            if (e & 1) r = r * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return r;
    }

    // Reciprocal series. The lowest coefficient must be invertible in the
    // DenForm class (a scalar times y and difference factors).
    EpsSeries inverse() const {
        GBE_CHECK(!is_zero(), "EpsSeries: inverse of zero");
        int l = lo();
        RatFn inv0 = invert_factor(c_.begin()->second);
        // unit part u = series * eps^{-l} * inv0 = 1 + v, v of positive order
        EpsSeries v(npoints_, hi_ - l);
        for (const auto& kv : c_) {
            if (kv.first == l) continue;
            v.set(kv.first - l, -(kv.second * inv0));
        }
        EpsSeries acc = from_ratfn(RatFn::constant(npoints_, Rat(1)), hi_ - l);
        EpsSeries term = v;
        while (!term.is_zero() && term.lo() <= acc.hi()) {
            acc += term;
            term = term * v;
        }
        return acc.mul_ratfn(inv0).shift(-l);
    }

private:
    int npoints_;
    int hi_;
    std::map<int, RatFn> c_;
};

} // namespace gbe

#endif
