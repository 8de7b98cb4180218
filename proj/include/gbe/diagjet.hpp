#ifndef GBE_DIAGJET_HPP
#define GBE_DIAGJET_HPP

#include <map>

#include "gbe/epsseries.hpp"
#include "gbe/solver.hpp"
#include "gbe/ycalc.hpp"

namespace gbe {

// Loop-equation solver in the ring of truncated jets around the total
// diagonal. The restricted jet of W_n^{(g)} is
//   J(x; e_2..e_n) = W_n^{(g)}(x, x+e_2, ..., x+e_n) + O(e^{K+1}),
// stored as a RatFn on a synthetic n-point context: point 1 is the base x
// (carrying y and the denominator), points 2..n are the nilpotent offsets
// (no y, no denominator factors, total degree capped at K).
//
// The system closes on restricted jets: the first-slot derivative is
// d/dx - sum_i d/de_i, the coinciding term of W_{n+1} is an offset
// evaluation at zero, and the derivative-difference term rewrites
// W_{n-1}(I) = W_{n-1}(x+e_i, I\e_i) through a base shift. Everything stays
// exact; only orders beyond the tracked truncation are dropped.

struct JetFamily {
    int n = 0, g = 0;
    int order = -1;               // valid through this total offset order
    std::vector<RatFn> parts;     // hbar slots, r = 0..g/2, on the synthetic context
};

namespace jetdetail {

inline TruncSpec trunc_spec(int n, int K) {
    TruncSpec t;
    for (int i = 2; i <= n; ++i) t.point_mask = static_cast<uint16_t>(t.point_mask | (1u << i));
    t.cap = K;
    return t;
}

inline int offset_degree(const VarExp& m, int n) {
    int d = 0;
    for (int i = 2; i <= n; ++i) d += m.e[static_cast<size_t>(i)];
    return d;
}

inline RatFn truncate(const RatFn& f, int K) {
    int n = f.npoints();
    std::vector<YPoly::Part> parts;
    for (const auto& p : f.num().parts()) {
        std::vector<MPoly::Term> keep;
        for (const auto& t : p.second.terms())
            if (offset_degree(t.first, n) <= K) keep.push_back(t);
        if (!keep.empty()) parts.emplace_back(p.first, MPoly::from_terms(n, std::move(keep)));
    }
    return RatFn(YPoly::from_parts(n, std::move(parts)), f.den());
}

inline RatFn jet_mul(const RatFn& a, const RatFn& b, int K) {
    TruncSpec t = trunc_spec(a.npoints(), K);
    return RatFn(YPoly::mul(a.num(), b.num(), &t), a.den() * b.den());
}

// exact division by e_i (every monomial must carry it)
inline RatFn div_offset(const RatFn& f, int i) {
    int n = f.npoints();
    std::vector<YPoly::Part> parts;
    for (const auto& p : f.num().parts()) {
        std::vector<MPoly::Term> out;
        for (const auto& t : p.second.terms()) {
            GBE_CHECK(t.first.e[static_cast<size_t>(i)] >= 1, "jet: offset division not exact");
            VarExp m = t.first;
            m.e[static_cast<size_t>(i)] = static_cast<uint8_t>(m.e[static_cast<size_t>(i)] - 1);
            out.emplace_back(m, t.second);
        }
        if (!out.empty()) parts.emplace_back(p.first, MPoly::from_terms(n, std::move(out)));
    }
    return RatFn(YPoly::from_parts(n, std::move(parts)), f.den());
}

// set offset e_i to zero
inline RatFn offset_to_zero(const RatFn& f, int i) {
    int n = f.npoints();
    std::vector<YPoly::Part> parts;
    for (const auto& p : f.num().parts()) {
        std::vector<MPoly::Term> out;
        for (const auto& t : p.second.terms())
            if (t.first.e[static_cast<size_t>(i)] == 0) out.push_back(t);
        if (!out.empty()) parts.emplace_back(p.first, MPoly::from_terms(n, std::move(out)));
    }
    return RatFn(YPoly::from_parts(n, std::move(parts)), f.den());
}

// multiply by e_b^k and drop overflow beyond K
inline RatFn mul_offset_power(const RatFn& f, int b, int k, int K) {
    if (k == 0) return truncate(f, K);
    int n = f.npoints();
    std::vector<YPoly::Part> parts;
    for (const auto& p : f.num().parts()) {
        std::vector<MPoly::Term> out;
        for (const auto& t : p.second.terms()) {
            if (offset_degree(t.first, n) + k > K) continue;
            VarExp m = t.first;
            int s = m.e[static_cast<size_t>(b)] + k;
            GBE_CHECK(s <= 255, "jet: offset exponent overflow");
            m.e[static_cast<size_t>(b)] = static_cast<uint8_t>(s);
            out.emplace_back(m, t.second);
        }
        if (!out.empty()) parts.emplace_back(p.first, MPoly::from_terms(n, std::move(out)));
    }
    return RatFn(YPoly::from_parts(n, std::move(parts)), f.den());
}

} // namespace jetdetail

class JetSolver {
public:
    // Restricted jet family of W_n^{(g)}, valid through offset order K.
    const JetFamily& jets(int n, int g, int K) {
        GBE_CHECK(n >= 1 && g >= 0 && K >= 0, "jets: bad request");
        auto it = memo_.find({n, g});
        if (it != memo_.end() && it->second.order >= K) return it->second;
        plan(n, g, K);
        // compute everything planned, lowest chi first, at the planned order
        std::vector<std::pair<int, std::pair<int, int>>> todo;
        for (const auto& kv : planned_) {
            auto found = memo_.find(kv.first);
            if (found == memo_.end() || found->second.order < kv.second)
                todo.push_back({chi(kv.first.first, kv.first.second), kv.first});
        }
        std::sort(todo.begin(), todo.end());
        for (const auto& item : todo) {
            auto [nn, gg] = item.second;
            memo_[item.second] = compute(nn, gg, planned_.at(item.second));
        }
        planned_.clear();
        return memo_.at({n, g});
    }

    // hbar parts of W_n^{(g)}(x,...,x) as one-point functions.
    std::vector<RatFn> diagonal(int n, int g) {
        const JetFamily& fam = jets(n, g, 0);
        std::vector<RatFn> out;
        std::vector<int> map(static_cast<size_t>(n) + 1, 0);
        map[1] = 1;
        for (const auto& part : fam.parts) {
            RatFn v = part;
            for (int i = 2; i <= n; ++i) v = jetdetail::offset_to_zero(v, i);
            // only the base point remains
            out.push_back(v.remap_points(1, map));
        }
        return out;
    }

private:
    using Key = std::pair<int, int>;

    void plan(int n, int g, int K) {
        auto it = planned_.find({n, g});
        if (it != planned_.end() && it->second >= K) return;
        auto mem = memo_.find({n, g});
        if (mem != memo_.end() && mem->second.order >= K) return;
        planned_[{n, g}] = std::max(K, it != planned_.end() ? it->second : -1);
        if (n == 1 && g == 0) return;
        if (g >= 1) plan(n, g - 1, K + 1);
        if (g >= 2) plan(n + 1, g - 2, K);
        if (n >= 2) plan(n - 1, g, K + 2);
        for (int jsize = 0; jsize <= n - 1; ++jsize)
            for (int p = 0; p <= g; ++p) {
                if (jsize == 0 && p == 0) continue;
                if (jsize == n - 1 && p == g) continue;
                plan(jsize + 1, p, K);
                plan(n - jsize, g - p, K);
            }
    }

    JetFamily compute(int n, int g, int K) {
        JetFamily fam;
        fam.n = n;
        fam.g = g;
        fam.order = K;
        if (n == 1 && g == 0) {
            fam.parts = {base_w1_0().part(0)};
            return fam;
        }
        int nslots = g / 2 + 1;
        std::vector<RatFnAccum> rhs(static_cast<size_t>(nslots), RatFnAccum(n));

        // hbar d/dx acting on the first slot: d/dx_base - sum_i d/de_i
        if (g >= 1) {
            const JetFamily prev = jets_at(n, g - 1, K + 1);
            for (int r = 0; r < static_cast<int>(prev.parts.size()); ++r) {
                RatFn d = prev.parts[static_cast<size_t>(r)].derive(1);
                for (int i = 2; i <= n; ++i) d -= prev.parts[static_cast<size_t>(r)].derive(i);
                rhs[static_cast<size_t>(r)].add(jetdetail::truncate(d, K));
            }
        }

        // W_{n+1}^{(g-2)}(x, x, I): second slot's offset evaluated at zero
        if (g >= 2) {
            const JetFamily up = jets_at(n + 1, g - 2, K);
            std::vector<int> shrink(static_cast<size_t>(n + 1) + 1, 0);
            shrink[1] = 1;
            shrink[2] = 1; // dead after the offset is set to zero
            for (int s = 3; s <= n + 1; ++s) shrink[static_cast<size_t>(s)] = s - 1;
            for (int r = 0; r < static_cast<int>(up.parts.size()); ++r) {
                RatFn v = jetdetail::offset_to_zero(up.parts[static_cast<size_t>(r)], 2);
                rhs[static_cast<size_t>(r + 1)].add(v.remap_points(n, shrink));
            }
        }

        // products over subsets of the offsets
        int isize = n - 1;
        for (uint32_t jbits = 0; jbits < (1u << isize); ++jbits) {
            int jsize = __builtin_popcount(jbits);
            std::vector<int> jpts, cpts;
            for (int k = 0; k < isize; ++k)
                ((jbits >> k) & 1u ? jpts : cpts).push_back(k + 2);
            for (int p = 0; p <= g; ++p) {
                if (jsize == 0 && p == 0) continue;
                if (jsize == isize && p == g) continue;
                const JetFamily f1 = jets_at(jsize + 1, p, K);
                const JetFamily f2 = jets_at(n - jsize, g - p, K);
                for (int r1 = 0; r1 < static_cast<int>(f1.parts.size()); ++r1)
                    for (int r2 = 0; r2 < static_cast<int>(f2.parts.size()); ++r2) {
                        RatFn a = embed(f1.parts[static_cast<size_t>(r1)], n, jpts);
                        RatFn b = embed(f2.parts[static_cast<size_t>(r2)], n, cpts);
                        rhs[static_cast<size_t>(r1 + r2)].add(jetdetail::jet_mul(a, b, K));
                    }
            }
        }

        // derivative-difference terms
        if (n >= 2) {
            const JetFamily down = jets_at(n - 1, g, K + 2);
            for (int i = 2; i <= n; ++i) {
                std::vector<int> rest;
                for (int k = 2; k <= n; ++k)
                    if (k != i) rest.push_back(k);
                for (int r = 0; r < static_cast<int>(down.parts.size()); ++r) {
                    RatFn term_a = embed(down.parts[static_cast<size_t>(r)], n, rest);
                    RatFn term_b =
                        rebase(down.parts[static_cast<size_t>(r)], n, i, rest, K + 2);
                    RatFn q = jetdetail::div_offset(term_b - term_a, i);
                    rhs[static_cast<size_t>(r)].add(jetdetail::truncate(q.derive(i), K));
                }
            }
        }

        fam.parts.reserve(static_cast<size_t>(nslots));
        for (int r = 0; r < nslots; ++r)
            fam.parts.push_back(jetdetail::truncate(rhs[static_cast<size_t>(r)].finalize(), K).div_y(1));
        validate(fam);
        return fam;
    }

    // fetch from memo (computed by the plan execution)
    const JetFamily& jets_at(int n, int g, int K) {
        auto it = memo_.find({n, g});
        GBE_CHECK(it != memo_.end() && it->second.order >= K, "jets: plan missed a dependency");
        return it->second;
    }

    // injective remap of a stored k-point jet onto {x} U pts of an n-point context
    static RatFn embed(const RatFn& part, int n, const std::vector<int>& pts) {
        std::vector<int> map(static_cast<size_t>(part.npoints()) + 1, 0);
        map[1] = 1;
        for (size_t s = 0; s < pts.size(); ++s) map[s + 2] = pts[s];
        return part.remap_points(n, map);
    }

    // W_{m}(x + e_b, offsets...) from the restricted jet: the base moves to
    // x + e_b and each stored offset d_s becomes e_{pts[s]} - e_b.
    RatFn rebase(const RatFn& part, int n, int b, const std::vector<int>& pts, int K) {
        int m = part.npoints();
        GBE_CHECK(static_cast<int>(pts.size()) == m - 1, "rebase: arity mismatch");

        // step 1: d_s -> e_{pts[s]} - e_b, term by term
        int a = part.den().ypow(1);
        Rat scalar = part.den().scalar();
        std::vector<std::unordered_map<VarExp, Rat, VarExpHash>> acc(2); // [has_y]
        for (const auto& ypart : part.num().parts()) {
            bool has_y = (ypart.first >> 1) & 1u;
            for (const auto& term : ypart.second.terms()) {
                // distribute each offset power (e_t - e_b)^e
                std::vector<std::pair<VarExp, Rat>> partial{{VarExp::of_t(term.first.t()), term.second}};
                // base x power carries over to slot 1 for now
                partial[0].first.e[1] = term.first.e[1];
                for (int s = 2; s <= m; ++s) {
                    int e = term.first.e[static_cast<size_t>(s)];
                    if (!e) continue;
                    int t = pts[static_cast<size_t>(s - 2)];
                    std::vector<std::pair<VarExp, Rat>> next;
                    for (const auto& pp : partial)
                        for (int k = 0; k <= e; ++k) {
                            VarExp mm = pp.first;
                            mm.e[static_cast<size_t>(t)] = static_cast<uint8_t>(mm.e[static_cast<size_t>(t)] + k);
                            mm.e[static_cast<size_t>(b)] =
                                static_cast<uint8_t>(mm.e[static_cast<size_t>(b)] + (e - k));
                            Rat c = pp.second * binomial(static_cast<unsigned>(e), static_cast<unsigned>(k));
                            if ((e - k) & 1) c = -c;
                            next.emplace_back(mm, std::move(c));
                        }
                    partial = std::move(next);
                }
                auto& slot = acc[has_y ? 1 : 0];
                for (auto& pp : partial) {
                    if (jetdetail::offset_degree(pp.first, n) > K) continue;
                    auto it = slot.find(pp.first);
                    if (it == slot.end())
                        slot.emplace(pp.first, std::move(pp.second));
                    else
                        it->second += pp.second;
                }
            }
        }

        // step 2: base shift x -> x + e_b via a formal series, then fold e_b in
        EpsSeries Y = EpsSeries::from_coeffs(y_taylor(n, 1, K), K);
        auto expand_x = [&](std::unordered_map<VarExp, Rat, VarExpHash>& src) {
            EpsSeries s(n, K);
            std::map<int, std::unordered_map<VarExp, Rat, VarExpHash>> orders;
            for (auto& kv : src) {
                int d = kv.first.e[1];
                int odeg = jetdetail::offset_degree(kv.first, n);
                for (int k = 0; k <= d && k + odeg <= K; ++k) {
                    VarExp mm = kv.first;
                    mm.e[1] = static_cast<uint8_t>(d - k);
                    Rat c = kv.second * binomial(static_cast<unsigned>(d), static_cast<unsigned>(k));
                    auto& slot = orders[k];
                    auto it = slot.find(mm);
                    if (it == slot.end())
                        slot.emplace(mm, std::move(c));
                    else
                        it->second += c;
                }
            }
            for (auto& kv : orders) {
                MPoly p = MPoly::from_map(n, std::move(kv.second));
                if (!p.is_zero())
                    s.set(kv.first, RatFn(YPoly::from_mpoly(std::move(p)), DenForm(n)));
            }
            return s;
        };
        EpsSeries N = expand_x(acc[0]) + expand_x(acc[1]) * Y;
        EpsSeries S = a ? N * Y.pow(a).inverse() : N;

        RatFnAccum total(n);
        for (const auto& kv : S.coeffs()) {
            if (kv.first > K) continue;
            GBE_CHECK(kv.first >= 0, "rebase: negative series order");
            total.add(jetdetail::mul_offset_power(kv.second, b, kv.first, K));
        }
        RatFn out = total.finalize();
        if (!scalar.is_one()) out = out.mul_scalar(scalar.inverse());
        return out;
    }

    static void validate(const JetFamily& fam) {
        // weighted homogeneity: offsets count as x-degree 1
        int expect = 4 - 3 * fam.n - 2 * fam.g;
        for (const auto& p : fam.parts) {
            if (p.is_zero()) continue;
            auto [lo, hi] = p.weighted_degree_range();
            GBE_CHECK(lo == expect && hi == expect, "jets: homogeneity violated");
        }
    }

    std::map<Key, JetFamily> memo_;
    std::map<Key, int> planned_;
};

} // namespace gbe

#endif
