#ifndef GBE_CONJECTURE_HPP
#define GBE_CONJECTURE_HPP

#include "gbe/corrfn.hpp"
#include "gbe/epsseries.hpp"
#include "gbe/useries.hpp"

namespace gbe {

// Expansion of a multivariate function at x_1 -> infinity on the physical
// branch y_1 = x_1 sqrt(1 - 4T/x_1^2), as a series in u = 1/x_1 with
// coefficients on the remaining points. Exact to order K.
inline EpsSeries expand_first_at_infinity(const RatFn& f, int K) {
    int n = f.npoints();
    GBE_CHECK(n >= 1, "expand_first_at_infinity: empty context");
    int nn = n - 1;
    std::vector<int> map(static_cast<size_t>(n) + 1, 0);
    for (int k = 2; k <= n; ++k) map[static_cast<size_t>(k)] = k - 1;

    if (f.is_zero()) return EpsSeries::zero(nn, K);

    // series H = sqrt(1 - 4T u^2) with coefficients lifted to nn points
    int maxd = 0;
    for (const auto& part : f.num().parts()) maxd = std::max(maxd, part.second.degree_in(1));
    int dshift = f.den().ypow(1);
    for (int q = 2; q <= n; ++q) dshift += f.den().diffpow(1, q);
    int guard = K + maxd + dshift + 2;
    USeries H = curve_half_power(1, guard);
    auto lift = [&](const USeries& s) {
        EpsSeries r(nn, s.hi());
        for (const auto& kv : s.coeffs()) {
            std::vector<MPoly::Term> terms;
            for (const auto& t : kv.second.terms()) terms.emplace_back(t.first, t.second);
            r.set(kv.first,
                  RatFn(YPoly::from_mpoly(MPoly::from_terms(nn, std::move(terms))), DenForm(nn)));
        }
        return r;
    };
    EpsSeries Hs = lift(H);

    // numerator: x_1^d -> u^{-d}; y_1 -> u^{-1} H; other points remapped
    EpsSeries N = EpsSeries::zero(nn, guard);
    for (const auto& part : f.num().parts()) {
        bool has_y1 = (part.first >> 1) & 1u;
        YMask mask = 0;
        for (int k = 2; k <= n; ++k)
            if ((part.first >> k) & 1u) mask = static_cast<YMask>(mask | (1u << (k - 1)));
        // bucket the part by x_1 degree
        std::map<int, std::vector<MPoly::Term>> buckets;
        for (const auto& term : part.second.terms()) {
            VarExp m;
            m.e[0] = term.first.e[0];
            for (int k = 2; k <= n; ++k) m.e[static_cast<size_t>(k - 1)] = term.first.e[static_cast<size_t>(k)];
            buckets[term.first.x(1)].emplace_back(m, term.second);
        }
        for (auto& kv : buckets) {
            YPoly num_part(nn);
            MPoly c = MPoly::from_terms(nn, std::move(kv.second));
            num_part = YPoly::from_parts(nn, {{mask, std::move(c)}});
            EpsSeries piece =
                EpsSeries::from_ratfn(RatFn(std::move(num_part), DenForm(nn)), guard).shift(-kv.first);
            if (has_y1) piece = (piece * Hs).shift(-1);
            N += piece;
        }
    }

    // denominator: y_1^{a} -> u^{-a} H^{a}; (x_1 - x_j)^b -> u^{-b} (1 - x_j u)^b
    int shift = 0;
    EpsSeries D = EpsSeries::from_ratfn(RatFn::constant(nn, Rat(1)), guard);
    int a1 = f.den().ypow(1);
    if (a1) {
        D = D * Hs.pow(a1);
        shift += a1;
    }
    DenForm rest(nn);
    rest.set_scalar(f.den().scalar());
    for (int k = 2; k <= n; ++k)
        if (f.den().ypow(k)) rest.add_ypow(k - 1, f.den().ypow(k));
    for (int q = 2; q <= n; ++q)
        for (int p = 1; p < q; ++p) {
            int b = f.den().diffpow(p, q);
            if (!b) continue;
            if (p == 1) {
                EpsSeries lin(nn, guard);
                lin.set(0, RatFn::constant(nn, Rat(1)));
                lin.set(1, -RatFn::x_var(nn, q - 1));
                D = D * lin.pow(b);
                shift += b;
            } else {
                rest.add_diffpow(p - 1, q - 1, b);
            }
        }

    EpsSeries S = (N * D.inverse()).shift(shift);
    EpsSeries out(nn, std::min(S.hi(), K));
    for (const auto& kv : S.coeffs()) {
        if (kv.first > out.hi()) continue;
        RatFn v = RatFn(kv.second.num(), kv.second.den() * rest);
        out.set(kv.first, std::move(v));
    }
    GBE_CHECK(out.hi() >= K, "expand_first_at_infinity: validity fell short");
    return out;
}

// One hbar slot of a coinciding-point function written as
//   (P_odd * y + P_even) / y^{5n+3g-6},
// i.e. P_odd / y^{5n+3g-7} + P_even / y^{5n+3g-6}.
struct StructSlot {
    int r = 0;            // hbar power g - 2r
    bool is_tail = false; // unpaired hbar^0 slot of even g
    MPoly p_odd{1};       // one-point polynomials over Q[T]
    MPoly p_even{1};

    int deg_odd = -1, deg_even = -1;
    Rat lead_odd, lead_even;
    bool degrees_ok = false;
    bool parity_ok = false;
    bool leading_opposite = false;
};

struct StructReport {
    int n = 0, g = 0;
    bool shape_ok = false;     // denominators divided into y^{5n+3g-6} exactly
    bool roundtrip_ok = false; // slots recombine to the input
    std::vector<StructSlot> slots;

    int asym_expected = 0;
    int asym_measured = -1;
    bool asym_ok = false;

    bool structure_pass() const {
        if (!shape_ok || !roundtrip_ok) return false;
        for (const auto& s : slots)
            if (!s.degrees_ok || !s.parity_ok || (!s.is_tail && !s.leading_opposite)) return false;
        return true;
    }
    bool pass() const { return structure_pass() && asym_ok; }
};

namespace detail {

inline int poly_degree_x(const MPoly& p) { return p.degree_in(1); }

inline Rat leading_coeff_x(const MPoly& p) {
    int d = p.degree_in(1);
    Rat lead;
    for (const auto& t : p.terms())
        if (t.first.x(1) == d) lead += t.second;
    return lead;
}

// all x-exponents share the parity of the degree
inline bool parity_matches_degree(const MPoly& p) {
    int d = p.degree_in(1);
    if (d < 0) return true;
    for (const auto& t : p.terms())
        if ((t.first.x(1) & 1) != (d & 1)) return false;
    return true;
}

} // namespace detail

// Decompose one hbar part of a one-point function into the (P_odd, P_even)
// slot pair at the conjectured y-exponent m = 5n+3g-6. Throws
// not_conjecture_shape when the denominator does not divide y^m.
inline StructSlot decompose_part(const RatFn& w, int n, int g, int r) {
    GBE_CHECK(w.npoints() == 1, "decompose: one-point functions only");
    GBE_CHECK(!(n == 1 && g == 0), "decompose: (1,0) is excluded");
    int m = 5 * n + 3 * g - 6;
    int k = w.den().ypow(1);

    YPoly num = w.num();
    if (k > m) {
        // must cancel y^{k-m} exactly against the numerator
        for (int t = 0; t < k - m; ++t) {
            auto q = num.divexact_y(1);
            if (!q)
                throw not_conjecture_shape("decompose: denominator y power " + std::to_string(k) +
                                           " exceeds the conjectured " + std::to_string(m));
            num = std::move(*q);
        }
    } else {
        for (int t = 0; t < m - k; ++t) num = num.mul_y(1);
    }

    Rat inv_s = w.den().scalar().inverse();
    StructSlot slot;
    slot.r = r;
    slot.is_tail = (g - 2 * r) == 0;
    slot.p_even = num.coeff(0).mul_scalar(inv_s);
    slot.p_odd = num.coeff(0b10).mul_scalar(inv_s);
    slot.deg_odd = detail::poly_degree_x(slot.p_odd);
    slot.deg_even = detail::poly_degree_x(slot.p_even);
    slot.lead_odd = detail::leading_coeff_x(slot.p_odd);
    slot.lead_even = detail::leading_coeff_x(slot.p_even);

    // degree claims: even slots 2n+g-2; odd slots 2n+g-3; the unpaired tail
    // of even g is a single even slot of degree 2n+g-4 with no odd partner.
    if (slot.is_tail) {
        slot.degrees_ok = slot.p_odd.is_zero() && slot.deg_even == 2 * n + g - 4;
    } else {
        slot.degrees_ok = slot.deg_even == 2 * n + g - 2 && slot.deg_odd == 2 * n + g - 3;
    }
    slot.parity_ok =
        detail::parity_matches_degree(slot.p_odd) && detail::parity_matches_degree(slot.p_even);
    slot.leading_opposite = (slot.lead_odd + slot.lead_even).is_zero();
    return slot;
}

// Rebuild (P_odd y + P_even)/y^m and compare with the input part.
inline bool decompose_roundtrip(const StructSlot& slot, const RatFn& w, int n, int g) {
    int m = 5 * n + 3 * g - 6;
    DenForm d(1);
    d.add_ypow(1, m);
    YPoly num = YPoly::from_mpoly(slot.p_even) + YPoly::from_mpoly(slot.p_odd).mul_y(1);
    return RatFn::equal(RatFn(std::move(num), std::move(d)), w);
}

// Structure + asymptotic battery for one (n, g), fed with the hbar parts of
// W_n^{(g)}(x,...,x).
inline StructReport check_structure(int n, int g, const std::vector<RatFn>& diag_parts) {
    StructReport rep;
    rep.n = n;
    rep.g = g;
    rep.shape_ok = true;
    rep.roundtrip_ok = true;
    for (int r = 0; r < static_cast<int>(diag_parts.size()); ++r) {
        try {
            StructSlot slot = decompose_part(diag_parts[static_cast<size_t>(r)], n, g, r);
            rep.roundtrip_ok =
                rep.roundtrip_ok && decompose_roundtrip(slot, diag_parts[static_cast<size_t>(r)], n, g);
            rep.slots.push_back(std::move(slot));
        } catch (const not_conjecture_shape&) {
            rep.shape_ok = false;
        }
    }

    rep.asym_expected = 3 * n + 2 * g - 2;
    rep.asym_measured = 1 << 20;
    bool all_vanish_below = true;
    for (const auto& part : diag_parts) {
        if (part.is_zero()) continue;
        USeries s = expand_inf(part, rep.asym_expected + 4);
        int first = s.first_nonzero();
        rep.asym_measured = std::min(rep.asym_measured, first);
        if (first < rep.asym_expected) all_vanish_below = false;
    }
    rep.asym_ok = all_vanish_below && rep.asym_measured == rep.asym_expected;
    return rep;
}

// Measured leading order at x -> infinity of the full hbar family.
inline int check_asymptotic(const std::vector<RatFn>& diag_parts, int probe_to) {
    int measured = 1 << 20;
    for (const auto& part : diag_parts) {
        if (part.is_zero()) continue;
        USeries s = expand_inf(part, probe_to);
        measured = std::min(measured, s.first_nonzero());
    }
    return measured;
}

// x^2-relation: D = x^2 W_n^{(g)}(x, x_1..x_{n-1}) + sum_i d/dx_i W_{n-1}^{(g)}
// must vanish as x -> infinity. Plain degree counting cannot see this (the
// cancellation lives on the y_1 ~ +x_1 branch only), so D is expanded
// exactly in u = 1/x on that branch and every order u^k, k <= 0, must be
// the zero function of the remaining points.
inline bool check_x2_relation(const CorrFn& wn, const CorrFn& wm) {
    GBE_CHECK(wn.n >= 2 && wm.n == wn.n - 1 && wm.g == wn.g, "check_x2: mismatched inputs");
    int n = wn.n;
    // embed W_{n-1} on points 2..n
    std::vector<int> map(static_cast<size_t>(n), 0);
    for (int s = 1; s <= n - 1; ++s) map[static_cast<size_t>(s)] = s + 1;

    for (int r = 0; r < wn.nparts(); ++r) {
        RatFn d = RatFn(YPoly::from_mpoly(MPoly::x_var(n, 1, 2)), DenForm(n)) * wn.part(r);
        RatFn emb = wm.part(r).remap_points(n, map);
        for (int i = 2; i <= n; ++i) d += emb.derive(i);
        if (d.is_zero()) continue;
        EpsSeries s = expand_first_at_infinity(d, 1);
        for (const auto& kv : s.coeffs())
            if (kv.first <= 0 && !kv.second.is_zero()) return false;
    }
    return true;
}

} // namespace gbe

#endif
