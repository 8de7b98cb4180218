#ifndef GBE_MERGE_HPP
#define GBE_MERGE_HPP

#include <unordered_map>

#include "gbe/epsseries.hpp"
#include "gbe/ycalc.hpp"

namespace gbe {

namespace detail {

inline YMask remap_mask(YMask m, const std::vector<int>& map, int npoints) {
    YMask r = 0;
    for (int k = 1; k <= npoints; ++k)
        if ((m >> k) & 1u) r = static_cast<YMask>(r | (1u << map[static_cast<size_t>(k)]));
    return r;
}

} // namespace detail

// Exact coinciding-point limit x_j -> x_i. Substitutes x_j = x_i + eps and
// y_j by the truncated Taylor series of y, inverts the denominator factors
// as series, and returns the eps^0 coefficient on the reduced point set.
// Surviving negative orders throw non_regular.
inline RatFn merge_pair(const RatFn& f, int i, int j) {
    int n = f.npoints();
    GBE_CHECK(n >= 2 && i != j && i >= 1 && j >= 1 && i <= n && j <= n,
              "merge_pair: bad point indices");
    int b = f.den().diffpow(i, j);
    int K = b + 1; // safety margin past the pole order

    int nn = n - 1;
    std::vector<int> map(static_cast<size_t>(n) + 1, 0);
    for (int k = 1; k <= n; ++k) {
        if (k == j) continue;
        map[static_cast<size_t>(k)] = k < j ? k : k - 1;
    }
    int ii = map[static_cast<size_t>(i)];

    if (f.is_zero()) return RatFn::zero(nn);

    EpsSeries Y = EpsSeries::from_coeffs(y_taylor(nn, ii, K), K);

    // Numerator: split on whether the part carries y_j; expand x_j = x_ii + eps.
    std::vector<std::unordered_map<YMask, std::unordered_map<VarExp, Rat, VarExpHash>>> acc(2);
    for (const auto& part : f.num().parts()) {
        bool has_yj = (part.first >> j) & 1u;
        YMask base_mask = detail::remap_mask(static_cast<YMask>(part.first & ~(1u << j)), map, n);
        auto& slot = acc[has_yj ? 1 : 0][base_mask];
        for (const auto& term : part.second.terms()) {
            int e = term.first.e[static_cast<size_t>(j)];
            VarExp base;
            base.e[0] = term.first.e[0];
            for (int k = 1; k <= n; ++k) {
                if (k == j) continue;
                base.e[static_cast<size_t>(map[static_cast<size_t>(k)])] = term.first.e[static_cast<size_t>(k)];
            }
            for (int k = 0; k <= std::min(e, K); ++k) {
                VarExp m = base;
                int s = m.e[static_cast<size_t>(ii)] + (e - k);
                GBE_CHECK(s <= 255, "merge_pair: exponent overflow");
                m.e[static_cast<size_t>(ii)] = static_cast<uint8_t>(s);
                // stash the eps order in the unused top slot temporarily
                m.e[15] = static_cast<uint8_t>(k);
                Rat c = term.second * binomial(static_cast<unsigned>(e), static_cast<unsigned>(k));
                auto it = slot.find(m);
                if (it == slot.end())
                    slot.emplace(m, std::move(c));
                else
                    it->second += c;
            }
        }
    }
    auto build_series = [&](int which) {
        EpsSeries s(nn, K);
        std::vector<std::vector<YPoly::Part>> parts(static_cast<size_t>(K) + 1);
        for (auto& mask_slot : acc[static_cast<size_t>(which)]) {
            std::vector<std::unordered_map<VarExp, Rat, VarExpHash>> by_order(static_cast<size_t>(K) + 1);
            for (auto& kv : mask_slot.second) {
                VarExp m = kv.first;
                int k = m.e[15];
                m.e[15] = 0;
                by_order[static_cast<size_t>(k)].emplace(m, std::move(kv.second));
            }
            for (int k = 0; k <= K; ++k)
                if (!by_order[static_cast<size_t>(k)].empty())
                    parts[static_cast<size_t>(k)].emplace_back(
                        mask_slot.first, MPoly::from_map(nn, std::move(by_order[static_cast<size_t>(k)])));
        }
        for (int k = 0; k <= K; ++k)
            if (!parts[static_cast<size_t>(k)].empty())
                s.set(k, RatFn(YPoly::from_parts(nn, std::move(parts[static_cast<size_t>(k)])), DenForm(nn)));
        return s;
    };
    EpsSeries N = build_series(0) + build_series(1) * Y;

    // eps-dependent denominator factors: y_j^{a_j} and (x_k - x_j)^{b_kj}.
    EpsSeries D = EpsSeries::from_ratfn(RatFn::constant(nn, Rat(1)), K);
    int aj = f.den().ypow(j);
    if (aj) D = D * Y.pow(aj);
    for (int k = 1; k <= n; ++k) {
        if (k == i || k == j) continue;
        int bkj = f.den().diffpow(k, j);
        if (!bkj) continue;
        int kk = map[static_cast<size_t>(k)];
        // stored factor is (x_min - x_max)^bkj
        MPoly base = k < j ? MPoly::diff(nn, kk, ii) : MPoly::diff(nn, ii, kk);
        int eps_sign = k < j ? -1 : 1;
        EpsSeries factor(nn, K);
        for (int m = 0; m <= std::min(bkj, K); ++m) {
            Rat c = binomial(static_cast<unsigned>(bkj), static_cast<unsigned>(m));
            if (eps_sign < 0 && (m & 1)) c = -c;
            MPoly coeff = DenForm::power(base, bkj - m).mul_scalar(c);
            if (!coeff.is_zero()) factor.set(m, RatFn(YPoly::from_mpoly(std::move(coeff)), DenForm(nn)));
        }
        D = D * factor;
    }

    EpsSeries S = (N * D.inverse()).shift(-b);
    if ((i < j) && (b & 1)) S = S.mul_ratfn(RatFn::constant(nn, Rat(-1)));

    for (const auto& kv : S.coeffs())
        if (kv.first < 0 && !kv.second.is_zero())
            throw non_regular("merge_pair: pole of order " + std::to_string(-kv.first) +
                              " survives the x" + std::to_string(j) + " -> x" + std::to_string(i) +
                              " limit");

    RatFn res = S.coeff(0);

    // eps-free denominator factors carry over directly.
    DenForm rest(nn);
    rest.set_scalar(f.den().scalar());
    for (int k = 1; k <= n; ++k)
        if (k != j && f.den().ypow(k)) rest.add_ypow(map[static_cast<size_t>(k)], f.den().ypow(k));
    for (int q = 2; q <= n; ++q)
        for (int p = 1; p < q; ++p) {
            if (p == j || q == j) continue;
            int bp = f.den().diffpow(p, q);
            // the remap is monotone away from j, so orientation is preserved
            if (bp) rest.add_diffpow(map[static_cast<size_t>(p)], map[static_cast<size_t>(q)], bp);
        }
    return RatFn(res.num(), res.den() * rest);
}

// Full coincidence x_1 = ... = x_n, folding each point into point 1.
inline RatFn merge_all(RatFn f) {
    while (f.npoints() > 1) f = merge_pair(f, 1, f.npoints());
    return f;
}

} // namespace gbe

#endif
