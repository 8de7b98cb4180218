#ifndef GBE_CORRFN_HPP
#define GBE_CORRFN_HPP

#include <vector>

#include "gbe/ratfn.hpp"

namespace gbe {

// One correlation function W_n^{(g)} as its hbar-graded family:
//   W_n^{(g)} = sum_r hbar^{g-2r} * parts[r],  r = 0 .. floor(g/2).
// hbar is a formal grading symbol, never a number.
struct CorrFn {
    int n = 0;
    int g = 0;
    std::vector<RatFn> parts;

    CorrFn() = default;
    CorrFn(int n_, int g_) : n(n_), g(g_) {
        parts.assign(static_cast<size_t>(g_ / 2) + 1, RatFn::zero(n_));
    }

    int nparts() const { return static_cast<int>(parts.size()); }
    int hbar_power(int r) const { return g - 2 * r; }

    const RatFn& part(int r) const { return parts[static_cast<size_t>(r)]; }
    RatFn& part(int r) { return parts[static_cast<size_t>(r)]; }

    bool is_zero() const {
        for (const auto& p : parts)
            if (!p.is_zero()) return false;
        return true;
    }

    static bool equal(const CorrFn& a, const CorrFn& b) {
        if (a.n != b.n || a.g != b.g || a.parts.size() != b.parts.size()) return false;
        for (size_t r = 0; r < a.parts.size(); ++r)
            if (!RatFn::equal(a.parts[r], b.parts[r])) return false;
        return true;
    }
};

} // namespace gbe

#endif
