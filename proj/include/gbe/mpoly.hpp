#ifndef GBE_MPOLY_HPP
#define GBE_MPOLY_HPP

#include <algorithm>
#include <array>
#include <cstring>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "gbe/rational.hpp"

namespace gbe {

// Exponent vector over (T, x1, ..., xn). Slot 0 is T, slot i is x_i.
// Fixed 16-byte footprint; supports up to 15 marked points.
struct VarExp {
    static constexpr int kMaxPoints = 15;
    std::array<uint8_t, 16> e{};

    static VarExp none() { return VarExp{}; }
    static VarExp of_t(uint8_t k) {
        VarExp v;
        v.e[0] = k;
        return v;
    }
    static VarExp of_x(int point, uint8_t k = 1) {
        VarExp v;
        v.e[static_cast<size_t>(point)] = k;
        return v;
    }

    uint8_t t() const { return e[0]; }
    uint8_t x(int point) const { return e[static_cast<size_t>(point)]; }

    int total_degree() const {
        int d = 0;
        for (uint8_t v : e) d += v;
        return d;
    }
    // T counts with weight 2, marked points with weight 1.
    int weighted_degree() const { return total_degree() + e[0]; }

    bool is_one() const {
        for (uint8_t v : e)
            if (v) return false;
        return true;
    }

    friend bool operator==(const VarExp& a, const VarExp& b) { return a.e == b.e; }

    friend VarExp operator*(const VarExp& a, const VarExp& b) {
        VarExp r;
        for (size_t i = 0; i < 16; ++i) {
            int s = a.e[i] + b.e[i];
            GBE_CHECK(s <= 255, "VarExp: exponent overflow");
            r.e[i] = static_cast<uint8_t>(s);
        }
        return r;
    }

    // Graded order; ties broken lexicographically with T < x1 < ... < xn
    // (the highest point is the most significant variable).
    static int cmp(const VarExp& a, const VarExp& b) {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db ? -1 : 1;
        for (int i = 15; i >= 0; --i) {
            if (a.e[static_cast<size_t>(i)] != b.e[static_cast<size_t>(i)])
                return a.e[static_cast<size_t>(i)] < b.e[static_cast<size_t>(i)] ? -1 : 1;
        }
        return 0;
    }
};

struct VarExpHash {
    size_t operator()(const VarExp& v) const {
        uint64_t a, b;
        std::memcpy(&a, v.e.data(), 8);
        std::memcpy(&b, v.e.data() + 8, 8);
        uint64_t h = a * 0x9e3779b97f4a7c15ull;
        h ^= b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdull;
        return static_cast<size_t>(h ^ (h >> 33));
    }
};

// Optional truncation used by the jet solver: terms whose exponent sum over
// the masked points exceeds `cap` are dropped during multiplication.
struct TruncSpec {
    uint16_t point_mask = 0; // bit i set => point i counts
    int cap = 0;

    int weight(const VarExp& v) const {
        int w = 0;
        for (int i = 1; i <= VarExp::kMaxPoints; ++i)
            if (point_mask & (1u << i)) w += v.e[static_cast<size_t>(i)];
        return w;
    }
};

// Polynomial over Q in T and the marked points x1..xn. Terms are kept in
// descending canonical order with no zero coefficients.
class MPoly {
public:
    using Term = std::pair<VarExp, Rat>;

    MPoly() : npoints_(0) {}
    explicit MPoly(int npoints) : npoints_(npoints) {
        GBE_CHECK(npoints >= 0 && npoints <= VarExp::kMaxPoints, "MPoly: bad point count");
    }

    static MPoly constant(int npoints, Rat c) {
        MPoly p(npoints);
        if (!c.is_zero()) p.terms_.emplace_back(VarExp::none(), std::move(c));
        return p;
    }
    static MPoly t_var(int npoints, uint8_t k = 1) { return monomial(npoints, VarExp::of_t(k), Rat(1)); }
    static MPoly x_var(int npoints, int point, uint8_t k = 1) {
        return monomial(npoints, VarExp::of_x(point, k), Rat(1));
    }
    static MPoly monomial(int npoints, const VarExp& m, Rat c) {
        MPoly p(npoints);
        if (!c.is_zero()) p.terms_.emplace_back(m, std::move(c));
        return p;
    }
    // x_i^2 - 4T, the defining curve of point i.
    static MPoly curve(int npoints, int point) {
        MPoly p(npoints);
        p.terms_.emplace_back(VarExp::of_x(point, 2), Rat(1));
        p.terms_.emplace_back(VarExp::of_t(1), Rat(-4));
        p.sort_combine();
        return p;
    }
    // x_i - x_j.
    static MPoly diff(int npoints, int i, int j) {
        MPoly p(npoints);
        p.terms_.emplace_back(VarExp::of_x(i), Rat(1));
        p.terms_.emplace_back(VarExp::of_x(j), Rat(-1));
        p.sort_combine();
        return p;
    }
    static MPoly from_terms(int npoints, std::vector<Term> terms) {
        MPoly p(npoints);
        p.terms_ = std::move(terms);
        p.sort_combine();
        return p;
    }

    int npoints() const { return npoints_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
    }
    Rat constant_value() const {
        if (terms_.empty()) return Rat(0);
        GBE_CHECK(is_constant(), "MPoly: not a constant");
        return terms_[0].second;
    }

    int degree_in(int var) const {
        int d = -1;
        for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.first.e[static_cast<size_t>(var)]));
        return d;
    }
    int total_degree() const {
        int d = -1;
        for (const auto& t : terms_) d = std::max(d, t.first.total_degree());
        return d;
    }

    MPoly operator-() const {
        MPoly r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) { return merge(a, b, false); }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return merge(a, b, true); }

    MPoly& operator+=(const MPoly& o) {
        *this = *this + o;
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        *this = *this - o;
        return *this;
    }

    MPoly mul_scalar(const Rat& c) const {
        if (c.is_zero()) return MPoly(npoints_);
        MPoly r = *this;
        for (auto& t : r.terms_) t.second *= c;
        return r;
    }
    MPoly mul_monomial(const VarExp& m, const Rat& c) const {
        if (c.is_zero()) return MPoly(npoints_);
        MPoly r(npoints_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.emplace_back(t.first * m, t.second * c);
        if (!m.is_one()) {
            // Multiplying by a monomial preserves the term order.
        }
        return r;
    }

    friend MPoly operator*(const MPoly& a, const MPoly& b) { return mul(a, b, nullptr); }

    static MPoly mul(const MPoly& a, const MPoly& b, const TruncSpec* trunc) {
        GBE_CHECK(a.npoints_ == b.npoints_, "MPoly: context mismatch");
        if (a.is_zero() || b.is_zero()) return MPoly(a.npoints_);
        if (a.terms_.size() == 1) return b.mul_monomial(a.terms_[0].first, a.terms_[0].second).truncated(trunc);
        if (b.terms_.size() == 1) return a.mul_monomial(b.terms_[0].first, b.terms_[0].second).truncated(trunc);

        std::unordered_map<VarExp, Rat, VarExpHash> acc;
        acc.reserve(a.terms_.size() * 2 + b.terms_.size());
        std::vector<int> bw;
        if (trunc) {
            bw.reserve(b.terms_.size());
            for (const auto& tb : b.terms_) bw.push_back(trunc->weight(tb.first));
        }
        for (const auto& ta : a.terms_) {
            int aw = trunc ? trunc->weight(ta.first) : 0;
            for (size_t k = 0; k < b.terms_.size(); ++k) {
                if (trunc && aw + bw[k] > trunc->cap) continue;
                const auto& tb = b.terms_[k];
                VarExp m = ta.first * tb.first;
                auto it = acc.find(m);
                if (it == acc.end())
                    acc.emplace(m, ta.second * tb.second);
                else
                    it->second += ta.second * tb.second;
            }
        }
        return from_map(a.npoints_, std::move(acc));
    }

    // d/dx_var. `var` = 0 differentiates in T.
    MPoly derivative(int var) const {
        MPoly r(npoints_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            uint8_t ev = t.first.e[static_cast<size_t>(var)];
            if (!ev) continue;
            VarExp m = t.first;
            m.e[static_cast<size_t>(var)] = static_cast<uint8_t>(ev - 1);
            r.terms_.emplace_back(m, t.second * Rat(ev));
        }
        r.sort_combine();
        return r;
    }

    // Remaps point indices; entry map[i] (1-based) is the new index of old
    // point i. The target context has new_npoints points.
    MPoly remap_points(int new_npoints, const std::vector<int>& map) const {
        MPoly r(new_npoints);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            VarExp m;
            m.e[0] = t.first.e[0];
            for (int i = 1; i <= npoints_; ++i) {
                uint8_t ev = t.first.e[static_cast<size_t>(i)];
                if (!ev) continue;
                int ni = map[static_cast<size_t>(i)];
                GBE_CHECK(ni >= 1 && ni <= new_npoints, "MPoly: remap out of range");
                int s = m.e[static_cast<size_t>(ni)] + ev;
                GBE_CHECK(s <= 255, "MPoly: remap exponent overflow");
                m.e[static_cast<size_t>(ni)] = static_cast<uint8_t>(s);
            }
            r.terms_.emplace_back(m, t.second);
        }
        r.sort_combine();
        return r;
    }

    // Exact division by (x_i - x_j); nullopt when not divisible.
    std::optional<MPoly> divexact_diff(int i, int j) const {
        if (is_zero()) return MPoly(npoints_);
        int d = degree_in(i);
        if (d < 1) return std::nullopt;
        std::vector<MPoly> c = bucket_by(i, d);
        // Horner against root x_i = x_j: q_{k-1} = c_k + x_j * q_k.
        std::vector<MPoly> q(static_cast<size_t>(d));
        MPoly carry = c[static_cast<size_t>(d)];
        for (int k = d; k >= 1; --k) {
            q[static_cast<size_t>(k - 1)] = carry;
            carry = c[static_cast<size_t>(k - 1)] + carry.mul_monomial(VarExp::of_x(j), Rat(1));
        }
        if (!carry.is_zero()) return std::nullopt;
        return recombine(i, q);
    }

    // Exact division by (x_i^2 - 4T); nullopt when not divisible.
    std::optional<MPoly> divexact_curve(int i) const {
        if (is_zero()) return MPoly(npoints_);
        int d = degree_in(i);
        if (d < 2) return std::nullopt;
        std::vector<MPoly> c = bucket_by(i, d);
        std::vector<MPoly> q(static_cast<size_t>(d - 1), MPoly(npoints_));
        VarExp t1 = VarExp::of_t(1);
        for (int k = d - 2; k >= 0; --k) {
            MPoly v = c[static_cast<size_t>(k + 2)];
            if (k + 2 <= d - 2) v += q[static_cast<size_t>(k + 2)].mul_monomial(t1, Rat(4));
            q[static_cast<size_t>(k)] = std::move(v);
        }
        MPoly r1 = c[1];
        if (d - 2 >= 1) r1 += q[1].mul_monomial(t1, Rat(4));
        MPoly r0 = c[0] + q[0].mul_monomial(t1, Rat(4));
        if (!r1.is_zero() || !r0.is_zero()) return std::nullopt;
        return recombine(i, q);
    }

    // Positive rational c such that (*this)/c has integer coefficients with
    // collective gcd 1. Zero polynomial has content 1.
    Rat content() const {
        if (terms_.empty()) return Rat(1);
        Int g = 0, l = 1;
        for (const auto& t : terms_) {
            g = int_gcd(g, t.second.num());
            l = l / int_gcd(l, t.second.den()) * t.second.den();
        }
        if (g.is_zero()) g = 1;
        return Rat(g, l);
    }

    Rat eval(const Rat& tval, const std::vector<Rat>& xs) const {
        Rat acc(0);
        for (const auto& t : terms_) {
            Rat v = t.second;
            if (t.first.e[0]) v *= tval.pow(t.first.e[0]);
            for (int i = 1; i <= npoints_; ++i) {
                uint8_t ev = t.first.e[static_cast<size_t>(i)];
                if (ev) v *= xs[static_cast<size_t>(i - 1)].pow(ev);
            }
            acc += v;
        }
        return acc;
    }

    // Substitute x_j -> value (a polynomial in the same context, with the
    // j slot unused in the result).
    MPoly substitute_x(int j, const MPoly& value) const {
        MPoly result(npoints_);
        int d = degree_in(j);
        if (d <= 0) return *this;
        std::vector<MPoly> c = bucket_by(j, d);
        MPoly acc = c[static_cast<size_t>(d)];
        for (int k = d - 1; k >= 0; --k) acc = acc * value + c[static_cast<size_t>(k)];
        return acc;
    }

    bool has_point(int i) const {
        for (const auto& t : terms_)
            if (t.first.e[static_cast<size_t>(i)]) return true;
        return false;
    }

    // Evaluation modulo a prime; used as a sound fast-reject before exact
    // division probes. Coefficient denominators must be invertible mod p.
    uint64_t eval_mod(const std::array<uint64_t, 16>& vals, uint64_t p) const {
        auto mulmod = [p](uint64_t a, uint64_t b) {
            return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % p);
        };
        // Power tables per variable up to the observed degree.
        std::array<std::vector<uint64_t>, 16> pows;
        for (size_t v = 0; v < 16; ++v) {
            int d = 0;
            for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.first.e[v]));
            pows[v].resize(static_cast<size_t>(d + 1));
            pows[v][0] = 1;
            for (int k = 1; k <= d; ++k) pows[v][static_cast<size_t>(k)] = mulmod(pows[v][static_cast<size_t>(k - 1)], vals[v] % p);
        }
        auto powmod = [&](uint64_t b, uint64_t e) {
            uint64_t r = 1;
            b %= p;
            while (e) {
                if (e & 1u) r = mulmod(r, b);
                b = mulmod(b, b);
                e >>= 1u;
            }
            return r;
        };
        uint64_t acc = 0;
        Int ip(p);
        for (const auto& t : terms_) {
            Int nm = t.second.num() % ip;
            if (nm < 0) nm += ip;
            uint64_t num = nm.convert_to<uint64_t>();
            uint64_t den = (t.second.den() % ip).convert_to<uint64_t>();
            GBE_CHECK(den != 0, "MPoly: modulus divides coefficient denominator");
            uint64_t v = mulmod(num, powmod(den, p - 2));
            for (size_t i = 0; i < 16; ++i)
                if (t.first.e[i]) v = mulmod(v, pows[i][t.first.e[i]]);
            acc = (acc + v) % p;
        }
        return acc;
    }

    std::pair<int, int> weighted_degree_range() const {
        int lo = 1 << 20, hi = -1;
        for (const auto& t : terms_) {
            int w = t.first.weighted_degree();
            lo = std::min(lo, w);
            hi = std::max(hi, w);
        }
        return {lo, hi};
    }

    static MPoly from_map(int npoints, std::unordered_map<VarExp, Rat, VarExpHash>&& acc) {
        MPoly r(npoints);
        r.terms_.reserve(acc.size());
        for (auto& kv : acc)
            if (!kv.second.is_zero()) r.terms_.emplace_back(kv.first, std::move(kv.second));
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term& a, const Term& b) { return VarExp::cmp(a.first, b.first) > 0; });
        return r;
    }

private:
    MPoly truncated(const TruncSpec* trunc) const {
        if (!trunc) return *this;
        MPoly r(npoints_);
        for (const auto& t : terms_)
            if (trunc->weight(t.first) <= trunc->cap) r.terms_.push_back(t);
        return r;
    }

    // Coefficients of powers of x_var, as polynomials with the slot zeroed.
    std::vector<MPoly> bucket_by(int var, int maxdeg) const {
        std::vector<MPoly> c(static_cast<size_t>(maxdeg + 1), MPoly(npoints_));
        for (const auto& t : terms_) {
            VarExp m = t.first;
            uint8_t ev = m.e[static_cast<size_t>(var)];
            m.e[static_cast<size_t>(var)] = 0;
            c[ev].terms_.emplace_back(m, t.second);
        }
        for (auto& p : c) p.sort_combine();
        return c;
    }

    MPoly recombine(int var, const std::vector<MPoly>& coeffs) const {
        MPoly r(npoints_);
        for (size_t k = 0; k < coeffs.size(); ++k)
            for (const auto& t : coeffs[k].terms_) {
                VarExp m = t.first;
                m.e[static_cast<size_t>(var)] = static_cast<uint8_t>(k);
                r.terms_.emplace_back(m, t.second);
            }
        r.sort_combine();
        return r;
    }

    static MPoly merge(const MPoly& a, const MPoly& b, bool subtract) {
        GBE_CHECK(a.npoints_ == b.npoints_, "MPoly: context mismatch");
        MPoly r(a.npoints_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            int c = VarExp::cmp(a.terms_[i].first, b.terms_[j].first);
            if (c > 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (c < 0) {
                Rat v = subtract ? -b.terms_[j].second : b.terms_[j].second;
                r.terms_.emplace_back(b.terms_[j].first, std::move(v));
                ++j;
            } else {
                Rat v = subtract ? a.terms_[i].second - b.terms_[j].second
                                 : a.terms_[i].second + b.terms_[j].second;
                if (!v.is_zero()) r.terms_.emplace_back(a.terms_[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j) {
            Rat v = subtract ? -b.terms_[j].second : b.terms_[j].second;
            r.terms_.emplace_back(b.terms_[j].first, std::move(v));
        }
        return r;
    }

    void sort_combine() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& a, const Term& b) { return VarExp::cmp(a.first, b.first) > 0; });
        size_t out = 0;
        for (size_t i = 0; i < terms_.size();) {
            size_t j = i + 1;
            Rat c = terms_[i].second;
            while (j < terms_.size() && terms_[j].first == terms_[i].first) c += terms_[j++].second;
            if (!c.is_zero()) terms_[out++] = {terms_[i].first, std::move(c)};
            i = j;
        }
        terms_.resize(out);
    }

    int npoints_;
    std::vector<Term> terms_;
};

} // namespace gbe

#endif
