#ifndef GBE_MOMENTS_HPP
#define GBE_MOMENTS_HPP

#include <functional>
#include <map>
#include <tuple>

#include "gbe/useries.hpp"

namespace gbe {

// Provider of the hbar parts of W_1^{(l)}.
using OnePointFamily = std::function<std::vector<RatFn>(int l)>;

// Exact spectral moment m_{2k} = <sum_i lambda_i^{2k}> as a Laurent
// polynomial in N and kappa over Q[T, 1/T], assembled from the topological
// expansion with hbar = sqrt(kappa) - 1/sqrt(kappa). The even/odd split
// tracks the hbar parity of each contribution.
struct MomentPoly {
    using Key = std::tuple<int, int, int>; // (N exp, kappa exp, T exp)
    int k = 0;
    std::map<Key, Rat> even, odd;

    std::map<Key, Rat> total() const {
        std::map<Key, Rat> t = even;
        for (const auto& kv : odd) {
            auto it = t.find(kv.first);
            if (it == t.end()) {
                t.emplace(kv.first, kv.second);
            } else {
                it->second += kv.second;
                if (it->second.is_zero()) t.erase(it);
            }
        }
        return t;
    }

    Rat eval(const Rat& bigN, const Rat& kappa, const Rat& T) const {
        Rat acc(0);
        auto pw = [](const Rat& b, int e) { return e >= 0 ? b.pow(static_cast<unsigned>(e)) : b.inverse().pow(static_cast<unsigned>(-e)); };
        for (const auto& kv : total())
            acc += kv.second * pw(bigN, std::get<0>(kv.first)) * pw(kappa, std::get<1>(kv.first)) *
                   pw(T, std::get<2>(kv.first));
        return acc;
    }
};

namespace detail {

inline void accumulate(std::map<MomentPoly::Key, Rat>& dst, const MomentPoly::Key& key, const Rat& v) {
    if (v.is_zero()) return;
    auto it = dst.find(key);
    if (it == dst.end()) {
        dst.emplace(key, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) dst.erase(it);
    }
}

} // namespace detail

// m_{2k}(N, kappa, T) = sum_{l=0}^{2k} (N/T)^{1-l} (sqrt kappa)^{-l} [u^{2k+1}] W_1^{(l)}.
// The summation cap l <= 2k is a safe superset: the tail l > k is verified to
// contribute nothing, which turns the x -> infinity theorem into a runtime
// assertion.
inline MomentPoly moment_poly(int k, const OnePointFamily& w1) {
    GBE_CHECK(k >= 0, "moment_poly: k >= 0");
    MomentPoly m;
    m.k = k;
    for (int l = 0; l <= 2 * k; ++l) {
        std::vector<RatFn> parts = w1(l);
        bool tail_contributes = false;
        for (int r = 0; r < static_cast<int>(parts.size()); ++r) {
            const RatFn& part = parts[static_cast<size_t>(r)];
            if (part.is_zero()) continue;
            MPoly c = expand_inf(part, 2 * k + 1).coeff(2 * k + 1);
            if (c.is_zero()) continue;
            if (l > k) tail_contributes = true;
            int hbar_pow = l - 2 * r;
            auto& dst = (hbar_pow & 1) ? m.odd : m.even;
            for (int j = 0; j <= hbar_pow; ++j) {
                Rat w = binomial(static_cast<unsigned>(hbar_pow), static_cast<unsigned>(j));
                if (j & 1) w = -w;
                for (const auto& term : c.terms())
                    detail::accumulate(dst,
                                       {1 - l, -(r + j), static_cast<int>(term.first.t()) + (l - 1)},
                                       term.second * w);
            }
        }
        GBE_CHECK(!tail_contributes, "moment_poly: W_1^{(l)} with l > k reached u^{2k+1}");
    }
    return m;
}

// Gaussian oracle at N = 1: m_{2k}(1, kappa, T) = (2k-1)!! (T/kappa)^k exactly.
inline bool check_gaussian_n1(int k, const MomentPoly& m) {
    std::map<std::pair<int, int>, Rat> at_n1; // (kappa exp, T exp)
    for (const auto& kv : m.total()) {
        auto key = std::make_pair(std::get<1>(kv.first), std::get<2>(kv.first));
        at_n1[key] += kv.second;
        if (at_n1[key].is_zero()) at_n1.erase(key);
    }
    Rat dfact(1);
    for (int j = 3; j <= 2 * k - 1; j += 2) dfact *= Rat(j);
    std::map<std::pair<int, int>, Rat> expect;
    if (!dfact.is_zero()) expect[{-k, k}] = dfact;
    return at_n1 == expect;
}

inline bool check_gaussian_n1(int k_max, const OnePointFamily& w1) {
    for (int k = 0; k <= k_max; ++k)
        if (!check_gaussian_n1(k, moment_poly(k, w1))) return false;
    return true;
}

// kappa -> 1/kappa structural symmetry. With the reweighting
// sigma(m)(N, kappa) = kappa^{-1} m(kappa N, 1/kappa), monomial-wise
// N^a kappa^b -> N^a kappa^{a-b-1}, the hbar-even part is invariant and the
// hbar-odd part flips sign.
inline bool check_kappa_symmetry(const MomentPoly& m) {
    auto transform = [](const std::map<MomentPoly::Key, Rat>& src) {
        std::map<MomentPoly::Key, Rat> out;
        for (const auto& kv : src) {
            auto [a, b, c] = kv.first;
            detail::accumulate(out, {a, a - b - 1, c}, kv.second);
        }
        return out;
    };
    auto negate = [](std::map<MomentPoly::Key, Rat> src) {
        for (auto& kv : src) kv.second = -kv.second;
        return src;
    };
    return transform(m.even) == m.even && transform(m.odd) == negate(m.odd);
}

} // namespace gbe

#endif
