#ifndef GBE_TEST_UTIL_HPP
#define GBE_TEST_UTIL_HPP

#include <random>
#include <vector>

#include "gbe/parse.hpp"
#include "gbe/ratfn.hpp"

namespace gbe::testutil {

// Rational points on the curve: x = t + T/t gives y = t - T/t exactly,
// so x^2 - 4T = y^2 holds with all values rational.
struct CurvePoint {
    Rat x, y;
};

inline CurvePoint curve_point(const Rat& t, const Rat& T) {
    CurvePoint p;
    p.x = t + T / t;
    p.y = t - T / t;
    return p;
}

struct EvalPoint {
    Rat T;
    std::vector<Rat> xs, ys;
};

inline EvalPoint eval_point(const std::vector<Rat>& ts, const Rat& T) {
    EvalPoint e;
    e.T = T;
    for (const auto& t : ts) {
        CurvePoint p = curve_point(t, T);
        e.xs.push_back(p.x);
        e.ys.push_back(p.y);
    }
    return e;
}

// Small random elements for property tests.
class RatFnGen {
public:
    RatFnGen(unsigned seed, int npoints) : rng_(seed), n_(npoints) {}

    Rat rat() {
        std::uniform_int_distribution<int> num(-6, 6);
        std::uniform_int_distribution<int> den(1, 4);
        return Rat(num(rng_), den(rng_));
    }

    MPoly mpoly(int max_terms = 4, int max_exp = 3) {
        std::uniform_int_distribution<int> nt(1, max_terms);
        std::uniform_int_distribution<int> ex(0, max_exp);
        std::vector<MPoly::Term> terms;
        int k = nt(rng_);
        for (int i = 0; i < k; ++i) {
            VarExp m;
            m.e[0] = static_cast<uint8_t>(ex(rng_));
            for (int p = 1; p <= n_; ++p) m.e[static_cast<size_t>(p)] = static_cast<uint8_t>(ex(rng_));
            terms.emplace_back(m, rat());
        }
        return MPoly::from_terms(n_, std::move(terms));
    }

    YPoly ypoly() {
        std::uniform_int_distribution<int> np(1, 3);
        std::uniform_int_distribution<int> mask(0, (1 << n_) - 1);
        std::vector<YPoly::Part> parts;
        int k = np(rng_);
        for (int i = 0; i < k; ++i)
            parts.emplace_back(static_cast<YMask>(mask(rng_) << 1), mpoly());
        return YPoly::from_parts(n_, std::move(parts));
    }

    RatFn ratfn() {
        DenForm d(n_);
        std::uniform_int_distribution<int> pow(0, 2);
        std::uniform_int_distribution<int> sc(1, 3);
        d.set_scalar(Rat(sc(rng_)));
        for (int i = 1; i <= n_; ++i) d.add_ypow(i, pow(rng_));
        for (int j = 2; j <= n_; ++j)
            for (int i = 1; i < j; ++i) d.add_diffpow(i, j, pow(rng_));
        YPoly num = ypoly();
        if (num.is_zero()) num = YPoly::constant(n_, Rat(1));
        return RatFn(std::move(num), std::move(d));
    }

private:
    std::mt19937 rng_;
    int n_;
};

} // namespace gbe::testutil

#endif
