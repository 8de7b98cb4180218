#ifndef GBE_RECURSIONS_HPP
#define GBE_RECURSIONS_HPP

#include "gbe/conjecture.hpp"
#include "gbe/merge.hpp"
#include "gbe/solver.hpp"

namespace gbe {

// Independent recursions for the extreme hbar coefficients of the
// coinciding-point functions: w_{1,0}^{(g)}, w_{2,0}^{(g)}, w_{1,2}^{(g)},
// plus the matching polynomial-level slot recursions. These never touch the
// multivariate solver and serve as its oracle.

// Polynomial slot pair (P at the odd y-exponent, P at the even one).
struct PPair {
    int g = 0;
    MPoly p1{1}; // odd slot
    MPoly p2{1}; // even slot
    Rat lead1, lead2;

    bool leading_sum_zero() const { return (lead1 + lead2).is_zero(); }
};

class Recursions {
public:
    // w_{1,0}^{(g)} for g >= 1:  y w = d/dx w^{(g-1)} + sum_{p=1}^{g-1} w^{(p)} w^{(g-p)}
    const RatFn& w10(int g) {
        GBE_CHECK(g >= 1, "w10: g >= 1");
        while (static_cast<int>(w10_.size()) <= g) {
            int k = static_cast<int>(w10_.size());
            if (k == 0) {
                w10_.push_back(RatFn::zero(1)); // unused slot
            } else if (k == 1) {
                w10_.push_back(parse_ratfn("1/(2*y1) - x1/(2*y1^2)", 1));
            } else {
                RatFn rhs = w10_[static_cast<size_t>(k - 1)].derive(1);
                for (int p = 1; p <= k - 1; ++p)
                    rhs += w10_[static_cast<size_t>(p)] * w10_[static_cast<size_t>(k - p)];
                w10_.push_back(rhs.div_y(1));
            }
        }
        return w10_[static_cast<size_t>(g)];
    }

    // w_{2,0}^{(g)} for g >= 0:
    //   y w = 1/2 d/dx w^{(g-1)} + 2 sum_{p=0}^{g-1} w^{(p)} w10^{(g-p)} + 1/2 w10^{(g)''}
    const RatFn& w20(int g) {
        GBE_CHECK(g >= 0, "w20: g >= 0");
        while (static_cast<int>(w20_.size()) <= g) {
            int k = static_cast<int>(w20_.size());
            if (k == 0) {
                w20_.push_back(parse_ratfn("T/y1^4", 1));
            } else {
                RatFn rhs = w20_[static_cast<size_t>(k - 1)].derive(1).mul_scalar(Rat(1, 2));
                for (int p = 0; p <= k - 1; ++p)
                    rhs += (w20_[static_cast<size_t>(p)] * w10(k - p)).mul_scalar(Rat(2));
                rhs += w10(k).derive(1).derive(1).mul_scalar(Rat(1, 2));
                w20_.push_back(rhs.div_y(1));
            }
        }
        return w20_[static_cast<size_t>(g)];
    }

    // w_{1,2}^{(g)} for g >= 1, seed w_{1,2}^{(1)} = 0:
    //   y w = 2 sum_{p=2}^{g-1} w^{(p)} w10^{(g-p)} + d/dx w^{(g-1)} + w20^{(g-2)}
    const RatFn& w12(int g) {
        GBE_CHECK(g >= 1, "w12: g >= 1");
        while (static_cast<int>(w12_.size()) <= g) {
            int k = static_cast<int>(w12_.size());
            if (k <= 1) {
                w12_.push_back(RatFn::zero(1));
            } else {
                RatFn rhs = w12_[static_cast<size_t>(k - 1)].derive(1);
                for (int p = 2; p <= k - 1; ++p)
                    rhs += (w12_[static_cast<size_t>(p)] * w10(k - p)).mul_scalar(Rat(2));
                rhs += w20(k - 2);
                w12_.push_back(rhs.div_y(1));
            }
        }
        return w12_[static_cast<size_t>(g)];
    }

    // Polynomial recursions for the slots of w_{1,0}: P_{1,1} at y^{3g-2},
    // P_{1,2} at y^{3g-1}.
    PPair p11_p12(int g) {
        GBE_CHECK(g >= 1, "p11_p12: g >= 1");
        fill_p1(g);
        return make_pair(g, p11_[static_cast<size_t>(g)], p12_[static_cast<size_t>(g)]);
    }

    // Slots of w_{2,0}: P_{2,1} at y^{3g+3}, P_{2,2} at y^{3g+4}.
    PPair p21_p22(int g) {
        GBE_CHECK(g >= 0, "p21_p22: g >= 0");
        fill_p2(g);
        return make_pair(g, p21_[static_cast<size_t>(g)], p22_[static_cast<size_t>(g)]);
    }

    // Slots of w_{1,2}: P_{1,3} at y^{3g-2}, P_{1,4} at y^{3g-1}.
    PPair p13_p14(int g) {
        GBE_CHECK(g >= 1, "p13_p14: g >= 1");
        fill_p3(g);
        return make_pair(g, p13_[static_cast<size_t>(g)], p14_[static_cast<size_t>(g)]);
    }

private:
    static PPair make_pair(int g, const MPoly& a, const MPoly& b) {
        PPair p;
        p.g = g;
        p.p1 = a;
        p.p2 = b;
        p.lead1 = detail::leading_coeff_x(a);
        p.lead2 = detail::leading_coeff_x(b);
        return p;
    }

    static MPoly curve1() { return MPoly::curve(1, 1); }
    static MPoly xm(const MPoly& p, const Rat& c) { return p.mul_monomial(VarExp::of_x(1), c); }

    void fill_p1(int g) {
        if (p11_.empty()) {
            p11_ = {MPoly(1), MPoly::constant(1, Rat(1, 2))};
            p12_ = {MPoly(1), MPoly::x_var(1, 1).mul_scalar(Rat(-1, 2))};
        }
        while (static_cast<int>(p11_.size()) <= g) {
            int k = static_cast<int>(p11_.size());
            MPoly a = xm(p11_[static_cast<size_t>(k - 1)], Rat(-(3 * k - 5))) +
                      curve1() * p11_[static_cast<size_t>(k - 1)].derivative(1);
            MPoly b = xm(p12_[static_cast<size_t>(k - 1)], Rat(-(3 * k - 4))) +
                      curve1() * p12_[static_cast<size_t>(k - 1)].derivative(1);
            for (int p = 1; p <= k - 1; ++p) {
                a += p11_[static_cast<size_t>(p)] * p12_[static_cast<size_t>(k - p)] +
                     p12_[static_cast<size_t>(p)] * p11_[static_cast<size_t>(k - p)];
                b += p12_[static_cast<size_t>(p)] * p12_[static_cast<size_t>(k - p)] +
                     curve1() * (p11_[static_cast<size_t>(p)] * p11_[static_cast<size_t>(k - p)]);
            }
            p11_.push_back(std::move(a));
            p12_.push_back(std::move(b));
        }
    }

    void fill_p2(int g) {
        fill_p1(std::max(g, 1));
        if (p21_.empty()) {
            p21_ = {MPoly(1)};
            p22_ = {MPoly::t_var(1)};
        }
        while (static_cast<int>(p21_.size()) <= g) {
            int k = static_cast<int>(p21_.size());
            fill_p1(k);
            const MPoly c = curve1();
            // constants of the 1/2 w10'' projection: see the slot bookkeeping
            // (x^2-4T)^2 P'' , -2kx(x^2-4T) P' , k[(k+1)x^2+4T] P with k = 3g-2 / 3g-1
            MPoly p11g = p11_[static_cast<size_t>(k)], p12g = p12_[static_cast<size_t>(k)];
            MPoly a = xm(p21_[static_cast<size_t>(k - 1)], Rat(-3 * k, 2)) +
                      (c * p21_[static_cast<size_t>(k - 1)].derivative(1)).mul_scalar(Rat(1, 2));
            MPoly b = xm(p22_[static_cast<size_t>(k - 1)], Rat(-(3 * k + 1), 2)) +
                      (c * p22_[static_cast<size_t>(k - 1)].derivative(1)).mul_scalar(Rat(1, 2));
            for (int p = 0; p <= k - 1; ++p) {
                a += (p21_[static_cast<size_t>(p)] * p12_[static_cast<size_t>(k - p)] +
                      p22_[static_cast<size_t>(p)] * p11_[static_cast<size_t>(k - p)])
                         .mul_scalar(Rat(2));
                b += (p22_[static_cast<size_t>(p)] * p12_[static_cast<size_t>(k - p)] +
                      c * (p21_[static_cast<size_t>(p)] * p11_[static_cast<size_t>(k - p)]))
                         .mul_scalar(Rat(2));
            }
            {
                // 1/2 w10^{(g)''} into the P21 slot via P11, exponent 3g-2
                MPoly t2 = MPoly::x_var(1, 1, 2).mul_scalar(Rat(3 * k - 1)) +
                           MPoly::t_var(1).mul_scalar(Rat(4));
                a += (t2 * p11g).mul_scalar(Rat(3 * k - 2, 2));
                a += xm(c * p11g.derivative(1), Rat(-(3 * k - 2)));
                a += (c * c * p11g.derivative(1).derivative(1)).mul_scalar(Rat(1, 2));
            }
            {
                // and into the P22 slot via P12, exponent 3g-1
                MPoly t2 = MPoly::x_var(1, 1, 2).mul_scalar(Rat(3 * k)) +
                           MPoly::t_var(1).mul_scalar(Rat(4));
                b += (t2 * p12g).mul_scalar(Rat(3 * k - 1, 2));
                b += xm(c * p12g.derivative(1), Rat(-(3 * k - 1)));
                b += (c * c * p12g.derivative(1).derivative(1)).mul_scalar(Rat(1, 2));
            }
            p21_.push_back(std::move(a));
            p22_.push_back(std::move(b));
        }
    }

    void fill_p3(int g) {
        if (p13_.empty()) {
            p13_ = {MPoly(1), MPoly(1)};
            p14_ = {MPoly(1), MPoly(1)};
        }
        while (static_cast<int>(p13_.size()) <= g) {
            int k = static_cast<int>(p13_.size());
            fill_p1(k);
            fill_p2(k - 2);
            const MPoly c = curve1();
            MPoly a = c * p13_[static_cast<size_t>(k - 1)].derivative(1) +
                      xm(p13_[static_cast<size_t>(k - 1)], Rat(-(3 * k - 5))) +
                      p21_[static_cast<size_t>(k - 2)];
            MPoly b = c * p14_[static_cast<size_t>(k - 1)].derivative(1) +
                      xm(p14_[static_cast<size_t>(k - 1)], Rat(-(3 * k - 4))) +
                      p22_[static_cast<size_t>(k - 2)];
            for (int p = 2; p <= k - 1; ++p) {
                a += (p13_[static_cast<size_t>(p)] * p12_[static_cast<size_t>(k - p)] +
                      p14_[static_cast<size_t>(p)] * p11_[static_cast<size_t>(k - p)])
                         .mul_scalar(Rat(2));
                b += (p14_[static_cast<size_t>(p)] * p12_[static_cast<size_t>(k - p)] +
                      c * (p13_[static_cast<size_t>(p)] * p11_[static_cast<size_t>(k - p)]))
                         .mul_scalar(Rat(2));
            }
            p13_.push_back(std::move(a));
            p14_.push_back(std::move(b));
        }
    }

    std::vector<RatFn> w10_, w20_, w12_;
    std::vector<MPoly> p11_, p12_, p21_, p22_, p13_, p14_;
};

// The closed-form identity behind the opposite-leading-coefficient proof:
// both coefficient combinations reduce to g(2g-1).
inline bool leading_identity(int g) {
    Rat lhs = Rat(3, 2) * Rat(g) * Rat(3 * g - 1) - Rat(3 * g - 1) * Rat(g) +
              Rat(1, 2) * Rat(g) * Rat(g - 1);
    Rat rhs = Rat(1, 2) * Rat(3 * g - 2) * Rat(3 * g - 1) - Rat(3 * g - 2) * Rat(g - 1) +
              Rat(1, 2) * Rat(g - 1) * Rat(g - 2);
    return lhs == rhs && lhs == Rat(g) * Rat(2 * g - 1);
}

// Symbolic version over Q[g] (g mapped onto the T slot of a 0-point context).
inline bool leading_identity_symbolic() {
    MPoly g = MPoly::t_var(0);
    auto lin = [&](long a, long b) { return g.mul_scalar(Rat(a)) + MPoly::constant(0, Rat(b)); };
    MPoly lhs = (g * lin(3, -1)).mul_scalar(Rat(3, 2)) - lin(3, -1) * g + (g * lin(1, -1)).mul_scalar(Rat(1, 2));
    MPoly rhs = (lin(3, -2) * lin(3, -1)).mul_scalar(Rat(1, 2)) - lin(3, -2) * lin(1, -1) +
                (lin(1, -1) * lin(1, -2)).mul_scalar(Rat(1, 2));
    MPoly target = g * lin(2, -1);
    return (lhs - rhs).is_zero() && (lhs - target).is_zero();
}

// Oracle equivalence: the independent chains against the loop-equation
// solver, the slot recursions against decompose, and the vanishing
// leading-coefficient sums.
inline bool crosscheck(int g_max, Solver& solver) {
    Recursions rec;
    for (int g = 0; g <= g_max; ++g) {
        if (g >= 1 && !RatFn::equal(rec.w10(g), solver.solve(1, g)->part(0))) return false;
        if (g >= 2 && !RatFn::equal(rec.w12(g), solver.solve(1, g)->part(1))) return false;
        if (!RatFn::equal(rec.w20(g), merge_all(solver.solve(2, g)->part(0)))) return false;

        // slot recursions reproduce the decompositions
        if (g >= 1) {
            PPair p = rec.p11_p12(g);
            StructSlot s = decompose_part(rec.w10(g), 1, g, 0);
            if (!(p.p1 - s.p_odd).is_zero() || !(p.p2 - s.p_even).is_zero()) return false;
            if (!p.leading_sum_zero()) return false;
            if (p.p1.degree_in(1) != g - 1 || p.p2.degree_in(1) != g) return false;
        }
        {
            PPair p = rec.p21_p22(g);
            StructSlot s = decompose_part(rec.w20(g), 2, g, 0);
            if (!(p.p1 - s.p_odd).is_zero() || !(p.p2 - s.p_even).is_zero()) return false;
            if (g >= 1 && !p.leading_sum_zero()) return false;
        }
        if (g >= 2) {
            PPair p = rec.p13_p14(g);
            StructSlot s = decompose_part(rec.w12(g), 1, g, 1);
            if (!(p.p1 - s.p_odd).is_zero() || !(p.p2 - s.p_even).is_zero()) return false;
            if (g >= 3 && !p.leading_sum_zero()) return false;
        }
        if (g >= 1 && !leading_identity(g)) return false;
    }
    return leading_identity_symbolic();
}

} // namespace gbe

#endif
