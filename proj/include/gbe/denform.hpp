#ifndef GBE_DENFORM_HPP
#define GBE_DENFORM_HPP

#include <vector>

#include "gbe/ypoly.hpp"

namespace gbe {

// Denominator in the closed class  scalar * prod_i y_i^{a_i} * prod_{i<j} (x_i - x_j)^{b_ij}.
// The scalar is a positive rational; everything the loop equations produce
// stays inside this class.
class DenForm {
public:
    DenForm() : npoints_(0), scalar_(1) {}
    explicit DenForm(int npoints)
        : npoints_(npoints), scalar_(1), ypow_(static_cast<size_t>(npoints) + 1, 0),
          diffpow_(pair_count(npoints), 0) {}

    static size_t pair_count(int n) { return static_cast<size_t>(n) * (n - 1) / 2; }
    // Index of the unordered pair {i, j}, i < j, both 1-based.
    static size_t pair_index(int i, int j) {
        return static_cast<size_t>(j - 1) * (j - 2) / 2 + static_cast<size_t>(i - 1);
    }

    int npoints() const { return npoints_; }
    const Rat& scalar() const { return scalar_; }
    void set_scalar(Rat s) {
        GBE_CHECK(s.sign() > 0, "DenForm: scalar must be positive");
        scalar_ = std::move(s);
    }

    int ypow(int i) const { return ypow_[static_cast<size_t>(i)]; }
    int diffpow(int i, int j) const {
        if (i == j) return 0;
        if (i > j) std::swap(i, j);
        return diffpow_[pair_index(i, j)];
    }
    void add_ypow(int i, int k) {
        int v = ypow_[static_cast<size_t>(i)] + k;
        GBE_CHECK(v >= 0 && v <= 255, "DenForm: y power out of range");
        ypow_[static_cast<size_t>(i)] = static_cast<uint8_t>(v);
    }
    void add_diffpow(int i, int j, int k) {
        GBE_CHECK(i != j, "DenForm: degenerate pair");
        if (i > j) std::swap(i, j);
        int v = diffpow_[pair_index(i, j)] + k;
        GBE_CHECK(v >= 0 && v <= 255, "DenForm: diff power out of range");
        diffpow_[pair_index(i, j)] = static_cast<uint8_t>(v);
    }

    bool is_one() const {
        if (!scalar_.is_one()) return false;
        for (auto v : ypow_)
            if (v) return false;
        for (auto v : diffpow_)
            if (v) return false;
        return true;
    }

    friend bool operator==(const DenForm& a, const DenForm& b) {
        return a.npoints_ == b.npoints_ && a.scalar_ == b.scalar_ && a.ypow_ == b.ypow_ &&
               a.diffpow_ == b.diffpow_;
    }

    friend DenForm operator*(const DenForm& a, const DenForm& b) {
        GBE_CHECK(a.npoints_ == b.npoints_, "DenForm: context mismatch");
        DenForm r = a;
        r.scalar_ = a.scalar_ * b.scalar_;
        for (size_t i = 0; i < r.ypow_.size(); ++i) {
            int v = r.ypow_[i] + b.ypow_[i];
            GBE_CHECK(v <= 255, "DenForm: y power overflow");
            r.ypow_[i] = static_cast<uint8_t>(v);
        }
        for (size_t i = 0; i < r.diffpow_.size(); ++i) {
            int v = r.diffpow_[i] + b.diffpow_[i];
            GBE_CHECK(v <= 255, "DenForm: diff power overflow");
            r.diffpow_[i] = static_cast<uint8_t>(v);
        }
        return r;
    }

    // Slot-wise maximum (the least common denominator shape); scalar is the
    // rational lcm of the two scalars.
    static DenForm common(const DenForm& a, const DenForm& b) {
        GBE_CHECK(a.npoints_ == b.npoints_, "DenForm: context mismatch");
        DenForm r(a.npoints_);
        r.scalar_ = Rat(boost::multiprecision::lcm(a.scalar_.num(), b.scalar_.num()),
                        int_gcd(a.scalar_.den(), b.scalar_.den()));
        for (size_t i = 0; i < r.ypow_.size(); ++i)
            r.ypow_[i] = std::max(a.ypow_[i], b.ypow_[i]);
        for (size_t i = 0; i < r.diffpow_.size(); ++i)
            r.diffpow_[i] = std::max(a.diffpow_[i], b.diffpow_[i]);
        return r;
    }

    // The cofactor (common / this) expanded as a ring element, scalar excluded.
    YPoly cofactor_poly(const DenForm& common) const {
        YPoly r = YPoly::constant(npoints_, Rat(1));
        for (int i = 1; i <= npoints_; ++i) {
            int d = common.ypow(i) - ypow(i);
            GBE_CHECK(d >= 0, "DenForm: not a sub-denominator");
            r = r * y_power_poly(npoints_, i, d);
        }
        for (int j = 2; j <= npoints_; ++j)
            for (int i = 1; i < j; ++i) {
                int d = common.diffpow(i, j) - diffpow(i, j);
                GBE_CHECK(d >= 0, "DenForm: not a sub-denominator");
                if (d) r = r.mul_mpoly(power(MPoly::diff(npoints_, i, j), d));
            }
        return r;
    }

    // Whole denominator as a ring element (without the scalar).
    YPoly as_ypoly() const {
        DenForm one(npoints_);
        return one.cofactor_poly(*this);
    }

    Rat eval(const Rat& tval, const std::vector<Rat>& xs, const std::vector<Rat>& ys) const {
        Rat acc = scalar_;
        for (int i = 1; i <= npoints_; ++i)
            if (ypow(i)) acc *= ys[static_cast<size_t>(i - 1)].pow(static_cast<unsigned>(ypow(i)));
        for (int j = 2; j <= npoints_; ++j)
            for (int i = 1; i < j; ++i)
                if (diffpow(i, j))
                    acc *= (xs[static_cast<size_t>(i - 1)] - xs[static_cast<size_t>(j - 1)])
                               .pow(static_cast<unsigned>(diffpow(i, j)));
        return acc;
    }

    // Remap of point indices; flips of pair orientation are accumulated as a
    // sign to be folded into the numerator.
    DenForm remap_points(int new_npoints, const std::vector<int>& map, int* sign_out) const {
        DenForm r(new_npoints);
        r.scalar_ = scalar_;
        int sign = 1;
        for (int i = 1; i <= npoints_; ++i)
            if (ypow(i)) r.add_ypow(map[static_cast<size_t>(i)], ypow(i));
        for (int j = 2; j <= npoints_; ++j)
            for (int i = 1; i < j; ++i) {
                int b = diffpow(i, j);
                if (!b) continue;
                int ni = map[static_cast<size_t>(i)], nj = map[static_cast<size_t>(j)];
                GBE_CHECK(ni != nj, "DenForm: remap collapses a pole pair");
                if (ni > nj && (b & 1)) sign = -sign;
                r.add_diffpow(ni, nj, b);
            }
        if (sign_out) *sign_out = sign;
        return r;
    }

    static YPoly y_power_poly(int npoints, int i, int k) {
        MPoly c = power(MPoly::curve(npoints, i), k / 2);
        YPoly r = YPoly::from_mpoly(std::move(c));
        if (k & 1) r = r * YPoly::y_var(npoints, i);
        return r;
    }

    static MPoly power(const MPoly& base, int k) {
        MPoly r = MPoly::constant(base.npoints(), Rat(1));
        MPoly b = base;
        while (k) {
            if (k & 1) r = r * b;
            if (k >>= 1) b = b * b;
        }
        return r;
    }

private:
    int npoints_;
    Rat scalar_;
    std::vector<uint8_t> ypow_;
    std::vector<uint8_t> diffpow_;
};

} // namespace gbe

#endif
