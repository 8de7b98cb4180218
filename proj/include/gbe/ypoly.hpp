#ifndef GBE_YPOLY_HPP
#define GBE_YPOLY_HPP

#include <optional>
#include <vector>

#include "gbe/mpoly.hpp"

namespace gbe {

// Subset of marked points; bit i (1-based) set means a factor y_i.
using YMask = uint16_t;

// Element of the extension ring Q[T, x][y1..yn] / (y_i^2 - (x_i^2 - 4T)).
// Canonical: every mask coefficient is y-free and masks are squarefree, i.e.
// each y_i appears to degree at most one.
class YPoly {
public:
    using Part = std::pair<YMask, MPoly>;

    YPoly() : npoints_(0) {}
    explicit YPoly(int npoints) : npoints_(npoints) {}

    static YPoly from_mpoly(MPoly p) {
        YPoly r(p.npoints());
        if (!p.is_zero()) r.parts_.emplace_back(0, std::move(p));
        return r;
    }
    static YPoly constant(int npoints, Rat c) { return from_mpoly(MPoly::constant(npoints, std::move(c))); }
    static YPoly y_var(int npoints, int point) {
        YPoly r(npoints);
        r.parts_.emplace_back(static_cast<YMask>(1u << point), MPoly::constant(npoints, Rat(1)));
        return r;
    }
    static YPoly from_parts(int npoints, std::vector<Part> parts) {
        YPoly r(npoints);
        r.parts_ = std::move(parts);
        r.normalize();
        return r;
    }

    int npoints() const { return npoints_; }
    bool is_zero() const { return parts_.empty(); }
    const std::vector<Part>& parts() const { return parts_; }

    size_t term_count() const {
        size_t n = 0;
        for (const auto& p : parts_) n += p.second.size();
        return n;
    }

    // Coefficient of the given mask (zero polynomial when absent).
    MPoly coeff(YMask mask) const {
        for (const auto& p : parts_)
            if (p.first == mask) return p.second;
        return MPoly(npoints_);
    }

    bool is_mpoly() const { return parts_.empty() || (parts_.size() == 1 && parts_[0].first == 0); }
    MPoly as_mpoly() const {
        GBE_CHECK(is_mpoly(), "YPoly: carries y factors");
        return parts_.empty() ? MPoly(npoints_) : parts_[0].second;
    }

    YPoly operator-() const {
        YPoly r = *this;
        for (auto& p : r.parts_) p.second = -p.second;
        return r;
    }

    friend YPoly operator+(const YPoly& a, const YPoly& b) { return merge(a, b, false); }
    friend YPoly operator-(const YPoly& a, const YPoly& b) { return merge(a, b, true); }
    YPoly& operator+=(const YPoly& o) {
        *this = *this + o;
        return *this;
    }
    YPoly& operator-=(const YPoly& o) {
        *this = *this - o;
        return *this;
    }

    YPoly mul_scalar(const Rat& c) const {
        if (c.is_zero()) return YPoly(npoints_);
        YPoly r = *this;
        for (auto& p : r.parts_) p.second = p.second.mul_scalar(c);
        return r;
    }
    YPoly mul_monomial(const VarExp& m, const Rat& c) const {
        if (c.is_zero()) return YPoly(npoints_);
        YPoly r = *this;
        for (auto& p : r.parts_) p.second = p.second.mul_monomial(m, c);
        return r;
    }
    YPoly mul_mpoly(const MPoly& q) const {
        YPoly r(npoints_);
        for (const auto& p : parts_) {
            MPoly v = p.second * q;
            if (!v.is_zero()) r.parts_.emplace_back(p.first, std::move(v));
        }
        return r;
    }

    friend YPoly operator*(const YPoly& a, const YPoly& b) { return mul(a, b, nullptr); }

    // Product with immediate reduction of every y_i^2 to x_i^2 - 4T.
    static YPoly mul(const YPoly& a, const YPoly& b, const TruncSpec* trunc) {
        GBE_CHECK(a.npoints_ == b.npoints_, "YPoly: context mismatch");
        YPoly r(a.npoints_);
        std::vector<Part> acc;
        for (const auto& pa : a.parts_)
            for (const auto& pb : b.parts_) {
                YMask overlap = pa.first & pb.first;
                MPoly c = MPoly::mul(pa.second, pb.second, trunc);
                for (int i = 1; i <= a.npoints_; ++i)
                    if (overlap & (1u << i)) c = MPoly::mul(c, MPoly::curve(a.npoints_, i), trunc);
                if (!c.is_zero()) acc.emplace_back(pa.first ^ pb.first, std::move(c));
            }
        r.parts_ = std::move(acc);
        r.normalize();
        return r;
    }

    // y_i * d/dx_i of this element; the chain rule y_i' = x_i / y_i makes the
    // y_i-scaled derivative stay in the ring.
    YPoly derivative_times_y(int i) const {
        YPoly r(npoints_);
        MPoly curve_i = MPoly::curve(npoints_, i);
        std::vector<Part> acc;
        for (const auto& p : parts_) {
            MPoly dc = p.second.derivative(i);
            bool has_y = (p.first >> i) & 1u;
            if (!dc.is_zero()) {
                // y_i * c' * y_S
                if (has_y)
                    acc.emplace_back(static_cast<YMask>(p.first ^ (1u << i)), dc * curve_i);
                else
                    acc.emplace_back(static_cast<YMask>(p.first | (1u << i)), std::move(dc));
            }
            if (has_y) {
                // y_i * c * x_i / y_i * y_{S\i} = c x_i y_{S\i}
                acc.emplace_back(static_cast<YMask>(p.first ^ (1u << i)),
                                 p.second.mul_monomial(VarExp::of_x(i), Rat(1)));
            }
        }
        r.parts_ = std::move(acc);
        r.normalize();
        return r;
    }

    // d/dT with the chain rule dy_i/dT = -2/y_i, scaled by prod of all y_i
    // present; unused by the solver, provided for completeness of tests.

    YPoly remap_points(int new_npoints, const std::vector<int>& map) const {
        YPoly r(new_npoints);
        std::vector<Part> acc;
        for (const auto& p : parts_) {
            YMask m = 0;
            MPoly extra(new_npoints);
            bool have_extra = false;
            for (int i = 1; i <= npoints_; ++i)
                if ((p.first >> i) & 1u) {
                    int ni = map[static_cast<size_t>(i)];
                    YMask bit = static_cast<YMask>(1u << ni);
                    if (m & bit) {
                        // Two y's landed on the same point: y^2 reduces.
                        m = static_cast<YMask>(m ^ bit);
                        MPoly c = MPoly::curve(new_npoints, ni);
                        extra = have_extra ? extra * c : c;
                        have_extra = true;
                    } else {
                        m = static_cast<YMask>(m | bit);
                    }
                }
            MPoly c = p.second.remap_points(new_npoints, map);
            if (have_extra) c = c * extra;
            if (!c.is_zero()) acc.emplace_back(m, std::move(c));
        }
        r.parts_ = std::move(acc);
        r.normalize();
        return r;
    }

    std::optional<YPoly> divexact_diff(int i, int j) const {
        YPoly r(npoints_);
        for (const auto& p : parts_) {
            auto q = p.second.divexact_diff(i, j);
            if (!q) return std::nullopt;
            if (!q->is_zero()) r.parts_.emplace_back(p.first, std::move(*q));
        }
        return r;
    }

    // Division by y_i: with num = A + y_i B, num / y_i = B + (A / (x_i^2-4T)) y_i.
    std::optional<YPoly> divexact_y(int i) const {
        YPoly r(npoints_);
        for (const auto& p : parts_) {
            if ((p.first >> i) & 1u) {
                r.parts_.emplace_back(static_cast<YMask>(p.first ^ (1u << i)), p.second);
            } else {
                auto q = p.second.divexact_curve(i);
                if (!q) return std::nullopt;
                if (!q->is_zero()) r.parts_.emplace_back(static_cast<YMask>(p.first | (1u << i)), std::move(*q));
            }
        }
        r.normalize();
        return r;
    }

    YPoly mul_y(int i) const {
        YPoly r(npoints_);
        MPoly curve_i = MPoly::curve(npoints_, i);
        for (const auto& p : parts_) {
            if ((p.first >> i) & 1u)
                r.parts_.emplace_back(static_cast<YMask>(p.first ^ (1u << i)), p.second * curve_i);
            else
                r.parts_.emplace_back(static_cast<YMask>(p.first | (1u << i)), p.second);
        }
        r.normalize();
        return r;
    }

    Rat content() const {
        if (parts_.empty()) return Rat(1);
        Int g = 0, l = 1;
        for (const auto& p : parts_)
            for (const auto& t : p.second.terms()) {
                g = int_gcd(g, t.second.num());
                l = l / int_gcd(l, t.second.den()) * t.second.den();
            }
        if (g.is_zero()) g = 1;
        return Rat(g, l);
    }

    Rat eval(const Rat& tval, const std::vector<Rat>& xs, const std::vector<Rat>& ys) const {
        Rat acc(0);
        for (const auto& p : parts_) {
            Rat v = p.second.eval(tval, xs);
            for (int i = 1; i <= npoints_; ++i)
                if ((p.first >> i) & 1u) v *= ys[static_cast<size_t>(i - 1)];
            acc += v;
        }
        return acc;
    }

    bool has_point(int i) const {
        for (const auto& p : parts_)
            if (((p.first >> i) & 1u) || p.second.has_point(i)) return true;
        return false;
    }

    // Weighted degree range counting T twice and every y_i once.
    std::pair<int, int> weighted_degree_range() const {
        int lo = 1 << 20, hi = -1;
        for (const auto& p : parts_) {
            int yd = 0;
            for (int i = 1; i <= npoints_; ++i) yd += (p.first >> i) & 1u;
            auto [plo, phi] = p.second.weighted_degree_range();
            lo = std::min(lo, plo + yd);
            hi = std::max(hi, phi + yd);
        }
        return {lo, hi};
    }

private:
    static YPoly merge(const YPoly& a, const YPoly& b, bool subtract) {
        GBE_CHECK(a.npoints_ == b.npoints_, "YPoly: context mismatch");
        YPoly r(a.npoints_);
        size_t i = 0, j = 0;
        while (i < a.parts_.size() && j < b.parts_.size()) {
            if (a.parts_[i].first < b.parts_[j].first) {
                r.parts_.push_back(a.parts_[i++]);
            } else if (b.parts_[j].first < a.parts_[i].first) {
                r.parts_.emplace_back(b.parts_[j].first,
                                      subtract ? -b.parts_[j].second : b.parts_[j].second);
                ++j;
            } else {
                MPoly v = subtract ? a.parts_[i].second - b.parts_[j].second
                                   : a.parts_[i].second + b.parts_[j].second;
                if (!v.is_zero()) r.parts_.emplace_back(a.parts_[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        for (; i < a.parts_.size(); ++i) r.parts_.push_back(a.parts_[i]);
        for (; j < b.parts_.size(); ++j)
            r.parts_.emplace_back(b.parts_[j].first, subtract ? -b.parts_[j].second : b.parts_[j].second);
        return r;
    }

    void normalize() {
        std::sort(parts_.begin(), parts_.end(),
                  [](const Part& a, const Part& b) { return a.first < b.first; });
        size_t out = 0;
        for (size_t i = 0; i < parts_.size();) {
            size_t j = i + 1;
            MPoly c = parts_[i].second;
            while (j < parts_.size() && parts_[j].first == parts_[i].first) c += parts_[j++].second;
            if (!c.is_zero()) parts_[out++] = {parts_[i].first, std::move(c)};
            i = j;
        }
        parts_.resize(out);
    }

    int npoints_;
    std::vector<Part> parts_;
};

} // namespace gbe

#endif
