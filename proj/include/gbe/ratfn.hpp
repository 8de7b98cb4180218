#ifndef GBE_RATFN_HPP
#define GBE_RATFN_HPP

#include "gbe/denform.hpp"

namespace gbe {

// Rational element num / den of the extension ring, with den restricted to
// the DenForm class. Kept opportunistically reduced: no mask-wise common
// y_i or (x_i - x_j) factor between num and den, numerator integer-primitive,
// positive scalar. This does not imply analytic lowest terms.
class RatFn {
public:
    RatFn() : num_(0), den_(0) {}
    explicit RatFn(int npoints) : num_(npoints), den_(npoints) {}
    RatFn(YPoly num, DenForm den) : num_(std::move(num)), den_(std::move(den)) {
        GBE_CHECK(num_.npoints() == den_.npoints(), "RatFn: context mismatch");
        reduce();
    }

    static RatFn zero(int npoints) { return RatFn(npoints); }
    static RatFn constant(int npoints, Rat c) {
        return RatFn(YPoly::constant(npoints, std::move(c)), DenForm(npoints));
    }
    static RatFn x_var(int npoints, int i) {
        return RatFn(YPoly::from_mpoly(MPoly::x_var(npoints, i)), DenForm(npoints));
    }
    static RatFn y_var(int npoints, int i) {
        return RatFn(YPoly::y_var(npoints, i), DenForm(npoints));
    }
    static RatFn t_var(int npoints) {
        return RatFn(YPoly::from_mpoly(MPoly::t_var(npoints)), DenForm(npoints));
    }

    int npoints() const { return num_.npoints(); }
    const YPoly& num() const { return num_; }
    const DenForm& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RatFn operator-() const { return make_raw(-num_, den_); }

    friend RatFn operator+(const RatFn& a, const RatFn& b) { return add_sub(a, b, false); }
    friend RatFn operator-(const RatFn& a, const RatFn& b) { return add_sub(a, b, true); }
    friend RatFn operator*(const RatFn& a, const RatFn& b) {
        GBE_CHECK(a.npoints() == b.npoints(), "RatFn: context mismatch");
        return RatFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    RatFn& operator+=(const RatFn& o) {
        *this = *this + o;
        return *this;
    }
    RatFn& operator-=(const RatFn& o) {
        *this = *this - o;
        return *this;
    }

    RatFn mul_scalar(const Rat& c) const {
        if (c.is_zero()) return zero(npoints());
        DenForm d = den_;
        YPoly n = num_;
        if (c.sign() < 0) {
            n = n.mul_scalar(Rat(-1));
            d.set_scalar(d.scalar() * (-c).inverse());
        } else {
            d.set_scalar(d.scalar() * c.inverse());
        }
        RatFn r = make_raw(std::move(n), std::move(d));
        r.normalize_content();
        return r;
    }

    // Division by y_i^k (a denominator bump followed by reduction).
    RatFn div_y(int i, int k = 1) const {
        DenForm d = den_;
        d.add_ypow(i, k);
        return RatFn(num_, std::move(d));
    }
    // Division by (x_i - x_j)^k; j < i flips the stored orientation sign.
    RatFn div_diff(int i, int j, int k = 1) const {
        DenForm d = den_;
        d.add_diffpow(i, j, k);
        YPoly n = num_;
        if (i > j && (k & 1)) n = -n;
        return RatFn(std::move(n), std::move(d));
    }

    // Exact partial derivative in x_i, treating each y_i as the algebraic
    // function sqrt(x_i^2 - 4T) of its point.
    RatFn derive(int i) const {
        GBE_CHECK(i >= 1 && i <= npoints(), "derive: point index out of range");
        if (is_zero()) return zero(npoints());
        int n = npoints();
        // N'/D as (y_i N') / (y_i D); the constructor reduction cancels the
        // helper y_i again when nothing else keeps it
        DenForm d1 = den_;
        d1.add_ypow(i, 1);
        RatFn acc(num_.derivative_times_y(i), std::move(d1));

        int a = den_.ypow(i);
        if (a) {
            DenForm d2 = den_;
            d2.add_ypow(i, 2);
            acc = acc + make_raw(num_.mul_monomial(VarExp::of_x(i), Rat(-a)), std::move(d2));
        }
        for (int j = 1; j <= n; ++j) {
            if (j == i) continue;
            int b = den_.diffpow(i, j);
            if (!b) continue;
            // log-derivative of (x_min - x_max)^b in x_i
            int sgn = i < j ? 1 : -1;
            DenForm d3 = den_;
            d3.add_diffpow(i, j, 1);
            acc = acc + make_raw(num_.mul_scalar(Rat(-b * sgn)), std::move(d3));
        }
        return acc;
    }

    // Identity of algebraic functions via cross-multiplication; no
    // normalization to lowest terms is assumed.
    static bool equal(const RatFn& a, const RatFn& b) {
        GBE_CHECK(a.npoints() == b.npoints(), "equal: context mismatch");
        if (a.den_ == b.den_) {
            YPoly d = a.num_ - b.num_;
            return d.is_zero();
        }
        DenForm c = DenForm::common(a.den_, b.den_);
        YPoly na = a.den_.cofactor_poly(c) * a.num_;
        YPoly nb = b.den_.cofactor_poly(c) * b.num_;
        Rat sa = c.scalar() / a.den_.scalar();
        Rat sb = c.scalar() / b.den_.scalar();
        return (na.mul_scalar(sa) - nb.mul_scalar(sb)).is_zero();
    }

    Rat eval(const Rat& tval, const std::vector<Rat>& xs, const std::vector<Rat>& ys) const {
        Rat d = den_.eval(tval, xs, ys);
        GBE_CHECK(!d.is_zero(), "RatFn: evaluation at a pole");
        return num_.eval(tval, xs, ys) / d;
    }

    RatFn remap_points(int new_npoints, const std::vector<int>& map) const {
        int sign = 1;
        DenForm d = den_.remap_points(new_npoints, map, &sign);
        YPoly n = num_.remap_points(new_npoints, map);
        if (sign < 0) n = -n;
        return RatFn(std::move(n), std::move(d));
    }

    // Weighted-degree range of the function (numerator minus denominator),
    // counting T twice and x_i, y_i once. Homogeneous values have lo == hi.
    std::pair<int, int> weighted_degree_range() const {
        auto [lo, hi] = num_.weighted_degree_range();
        int dd = 0;
        for (int i = 1; i <= npoints(); ++i) dd += den_.ypow(i);
        for (int j = 2; j <= npoints(); ++j)
            for (int i = 1; i < j; ++i) dd += den_.diffpow(i, j);
        return {lo - dd, hi - dd};
    }

    // Canonicalization: cancel y_i and (x_i - x_j) factors shared with the
    // denominator, then pull the numerator content into the scalar.
    void reduce() {
        if (num_.is_zero()) {
            den_ = DenForm(npoints());
            return;
        }
        int n = npoints();
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i = 1; i <= n; ++i) {
                while (den_.ypow(i) > 0 && probe_y(i)) {
                    auto q = num_.divexact_y(i);
                    if (!q) break;
                    num_ = std::move(*q);
                    den_.add_ypow(i, -1);
                    changed = true;
                }
            }
            for (int j = 2; j <= n; ++j)
                for (int i = 1; i < j; ++i) {
                    while (den_.diffpow(i, j) > 0 && probe_diff(i, j)) {
                        auto q = num_.divexact_diff(i, j);
                        if (!q) break;
                        num_ = std::move(*q);
                        den_.add_diffpow(i, j, -1);
                        changed = true;
                    }
                }
        }
        normalize_content();
    }

private:
    static RatFn make_raw(YPoly num, DenForm den) {
        RatFn r;
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        return r;
    }

    static RatFn add_sub(const RatFn& a, const RatFn& b, bool subtract) {
        GBE_CHECK(a.npoints() == b.npoints(), "RatFn: context mismatch");
        if (a.is_zero()) return subtract ? -b : b;
        if (b.is_zero()) return a;
        DenForm c = DenForm::common(a.den_, b.den_);
        YPoly na = (a.den_.cofactor_poly(c) * a.num_).mul_scalar(c.scalar() / a.den_.scalar());
        YPoly nb = (b.den_.cofactor_poly(c) * b.num_).mul_scalar(c.scalar() / b.den_.scalar());
        return RatFn(subtract ? na - nb : na + nb, std::move(c));
    }

    void normalize_content() {
        if (num_.is_zero()) {
            den_ = DenForm(npoints());
            return;
        }
        Rat c = num_.content();
        if (!c.is_one()) {
            num_ = num_.mul_scalar(c.inverse());
            den_.set_scalar(den_.scalar() / c);
        }
    }

    static constexpr uint64_t kProbePrime = 2305843009213693951ull; // 2^61 - 1

    // Sound fast-reject: evaluate the relevant numerator parts at a modular
    // root of the candidate factor; a nonzero value rules the cancel out.
    bool probe_y(int i) const {
        std::array<uint64_t, 16> vals;
        uint64_t t = 1048583;
        vals[0] = static_cast<uint64_t>((static_cast<__uint128_t>(t) * t) % kProbePrime);
        for (int v = 1; v < 16; ++v) vals[static_cast<size_t>(v)] = 2999999 + 7919ull * static_cast<uint64_t>(v);
        vals[static_cast<size_t>(i)] = 2 * t; // x_i^2 - 4T == 0 at this point
        for (const auto& p : num_.parts()) {
            if ((p.first >> i) & 1u) continue;
            if (p.second.eval_mod(vals, kProbePrime) != 0) return false;
        }
        return true;
    }

    bool probe_diff(int i, int j) const {
        std::array<uint64_t, 16> vals;
        vals[0] = 1000003;
        for (int v = 1; v < 16; ++v) vals[static_cast<size_t>(v)] = 4999999 + 104729ull * static_cast<uint64_t>(v);
        vals[static_cast<size_t>(j)] = vals[static_cast<size_t>(i)];
        for (const auto& p : num_.parts())
            if (p.second.eval_mod(vals, kProbePrime) != 0) return false;
        return true;
    }

    YPoly num_;
    DenForm den_;
};

enum class ArithOp { add, sub, mul };

inline RatFn arith(ArithOp op, const RatFn& f, const RatFn& g) {
    switch (op) {
    case ArithOp::add: return f + g;
    case ArithOp::sub: return f - g;
    case ArithOp::mul: return f * g;
    }
    throw internal_error("arith: bad op");
}

} // namespace gbe

#endif
