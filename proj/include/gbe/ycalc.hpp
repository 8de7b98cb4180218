#ifndef GBE_YCALC_HPP
#define GBE_YCALC_HPP

#include <mutex>
#include <vector>

#include "gbe/ratfn.hpp"

namespace gbe {

// Derivative calculus of y(x) = sqrt(x^2 - 4T):
//   y^(n)(x) = R_n(x) / y^(2n-1),  R_1 = x,
//   R_{n+1}(x) = (x^2 - 4T) R_n'(x) - (2n-1) x R_n(x).
// R_n lives in the one-point context (variables T, x1).
inline const MPoly& r_poly(int n) {
    GBE_CHECK(n >= 1, "r_poly: order must be >= 1");
    static std::mutex mu;
    static std::vector<MPoly> table; // table[k] = R_{k+1}
    std::lock_guard<std::mutex> lock(mu);
    if (table.empty()) table.push_back(MPoly::x_var(1, 1));
    while (static_cast<int>(table.size()) < n) {
        int m = static_cast<int>(table.size()); // previous order
        const MPoly& prev = table.back();
        MPoly next = MPoly::curve(1, 1) * prev.derivative(1) -
                     prev.mul_monomial(VarExp::of_x(1), Rat(2 * m - 1));
        table.push_back(std::move(next));
    }
    return table[static_cast<size_t>(n - 1)];
}

// R_n with x mapped to the marked point i of an n-point context.
inline MPoly r_poly_at(int n, int npoints, int i) {
    return r_poly(n).remap_points(npoints, {0, i});
}

// Coefficients of the truncated Taylor series of y(x_i + eps):
//   c_0 = y_i, c_k = R_k(x_i) / (k! y_i^{2k-1}) for k >= 1.
inline std::vector<RatFn> y_taylor(int npoints, int i, int K) {
    GBE_CHECK(K >= 0, "y_taylor: negative truncation order");
    std::vector<RatFn> c;
    c.reserve(static_cast<size_t>(K) + 1);
    c.push_back(RatFn::y_var(npoints, i));
    for (int k = 1; k <= K; ++k) {
        DenForm d(npoints);
        d.set_scalar(factorial(static_cast<unsigned>(k)));
        d.add_ypow(i, 2 * k - 1);
        c.emplace_back(YPoly::from_mpoly(r_poly_at(k, npoints, i)), std::move(d));
    }
    return c;
}

} // namespace gbe

#endif
