#ifndef GBE_TEST_GOLDEN_HPP
#define GBE_TEST_GOLDEN_HPP

// Hand-transcribed closed forms of the first correlation functions, used as
// golden data against the solver. Every function is returned as its
// hbar-graded parts (CorrFn) or a single part (RatFn).

#include <map>
#include <string>

#include "gbe/corrfn.hpp"
#include "gbe/parse.hpp"

namespace gbe::golden {

inline RatFn rf(const std::string& s, int n) { return parse_ratfn(s, n); }

// Parse a plain polynomial expression, restoring the content pulled into the
// denominator scalar by canonicalization.
inline MPoly poly(const std::string& s, int n = 1) {
    RatFn f = parse_ratfn(s, n);
    GBE_CHECK(f.den().is_one() || f.den().scalar().sign() > 0, "poly: not a polynomial");
    for (int i = 1; i <= n; ++i) GBE_CHECK(f.den().ypow(i) == 0, "poly: y denominator");
    return f.num().as_mpoly().mul_scalar(f.den().scalar().inverse());
}

// Sum over all distinct permutations of an exponent pattern, e.g.
// orbit(4, {1,1,2,0}) = sum of x_i x_j x_k^2 over distinct index choices.
inline RatFn orbit(int npoints, std::vector<int> pattern) {
    pattern.resize(static_cast<size_t>(npoints), 0);
    std::sort(pattern.begin(), pattern.end());
    std::vector<MPoly::Term> terms;
    do {
        VarExp m;
        for (int i = 0; i < npoints; ++i)
            m.e[static_cast<size_t>(i + 1)] = static_cast<uint8_t>(pattern[static_cast<size_t>(i)]);
        terms.emplace_back(m, Rat(1));
    } while (std::next_permutation(pattern.begin(), pattern.end()));
    return RatFn(YPoly::from_mpoly(MPoly::from_terms(npoints, std::move(terms))), DenForm(npoints));
}

// ---- one-point functions, section 2 ----------------------------------------

inline CorrFn w1_0() {
    CorrFn w(1, 0);
    w.part(0) = rf("(x1 - y1)/2", 1);
    return w;
}

inline CorrFn w1_1() {
    CorrFn w(1, 1);
    w.part(0) = rf("1/(2*y1) - x1/(2*y1^2)", 1);
    return w;
}

inline CorrFn w1_2() {
    CorrFn w(1, 2);
    w.part(0) = rf("-x1/y1^4 + (x1^2 + T)/y1^5", 1);
    w.part(1) = rf("T/y1^5", 1);
    return w;
}

inline CorrFn w1_3() {
    CorrFn w(1, 3);
    w.part(0) = rf("5*((x1^2 + T)/y1^7 - x1*(x1^2 + 2*T)/y1^8)", 1);
    w.part(1) = rf("(x1^2 + 6*T)/(2*y1^7) - x1*(x1^2 + 30*T)/(2*y1^8)", 1);
    return w;
}

inline CorrFn w1_4() {
    CorrFn w(1, 4);
    w.part(0) = rf("-(37*x1^3 + 92*T*x1)/y1^10 + (37*x1^4 + 123*T*x1^2 + 21*T^2)/y1^11", 1);
    w.part(1) = rf("-(23*x1^3 + 180*T*x1)/(2*y1^10) + (23*x1^4 + 454*T*x1^2 + 176*T^2)/(2*y1^11)", 1);
    w.part(2) = rf("21*T*(x1^2 + T)/y1^11", 1);
    return w;
}

// ---- two- and three-point genus zero ----------------------------------------

inline CorrFn w2_0() {
    CorrFn w(2, 0);
    w.part(0) = rf("-(y1*y2 - x1*x2 + 4*T)/(2*(x1-x2)^2*y1*y2)", 2);
    return w;
}
inline RatFn w2_0_alt() {
    return rf("-1/(2*(x1-x2)^2) + (x1*x2 - 4*T)/(2*(x1-x2)^2*y1*y2)", 2);
}
inline RatFn w2_0_xx() { return rf("T/y1^4", 1); }

inline CorrFn w3_0() {
    CorrFn w(3, 0);
    w.part(0) = rf("2*T*(x1*x2 + x1*x3 + x2*x3 + 4*T)/(y1^3*y2^3*y3^3)", 3);
    return w;
}
inline RatFn w3_0_xxx() { return rf("2*T*(3*x1^2 + 4*T)/y1^9", 1); }

inline CorrFn w4_0() {
    RatFn num = rf("-12288*T^6", 4) +
                rf("1536*T^5", 4) * orbit(4, {2}) - rf("4096*T^5", 4) * orbit(4, {1, 1}) -
                rf("1536*T^4", 4) * orbit(4, {1, 1, 1, 1}) + rf("640*T^4", 4) * orbit(4, {1, 1, 2}) +
                rf("640*T^4", 4) * orbit(4, {3, 1}) +
                rf("288*T^3", 4) * orbit(4, {1, 1, 1, 3}) - rf("64*T^3", 4) * orbit(4, {1, 2, 3}) -
                rf("64*T^3", 4) * orbit(4, {3, 3}) - rf("64*T^3", 4) * orbit(4, {1, 1, 2, 2}) -
                rf("96*T^3", 4) * orbit(4, {2, 2, 2}) +
                rf("48*T^2", 4) * orbit(4, {2, 2, 2, 2}) - rf("48*T^2", 4) * orbit(4, {3, 3, 1, 1}) -
                rf("8*T^2", 4) * orbit(4, {3, 3, 2}) - rf("8*T^2", 4) * orbit(4, {3, 2, 2, 1}) +
                rf("8*T", 4) * orbit(4, {3, 3, 2, 2}) + rf("6*T", 4) * orbit(4, {3, 3, 3, 1});
    CorrFn w(4, 0);
    w.part(0) = num * rf("1/(y1^5*y2^5*y3^5*y4^5)", 4);
    return w;
}
inline RatFn w4_0_x4() { return rf("24*T*(3*x1^4 + 18*T*x1^2 + 8*T^2)/y1^14", 1); }

// ---- appendix: W_2^{(1)}, W_2^{(2)}, W_3^{(1)} -------------------------------

inline CorrFn w2_1() {
    CorrFn w(2, 1);
    w.part(0) = rf("( (x1*x2 + 4*T)/(y1^3*y2^3)"
                   "  - (x1^2*x2^2 + 4*T*x1^2 - 4*T*x1*x2 - 3*x1*x2^3 - 32*T^2 + 16*T*x2^2)"
                   "    /((x1-x2)^3*y1*y2^4)"
                   "  + (x1^2*x2^2 + 4*T*x2^2 - 4*T*x1*x2 - 3*x1^3*x2 - 32*T^2 + 16*T*x1^2)"
                   "    /((x1-x2)^3*y1^4*y2) ) / 2",
                   2);
    return w;
}
inline RatFn w2_1_xx() { return rf("-x1*(x1^2 + 18*T)/(2*y1^7) + (x1^2 + 4*T)/(2*y1^6)", 1); }

// numerator polynomial of the third W21 term; P(x,x) = -2 y^4
inline RatFn w21_p_poly() {
    return rf("x1^2*x2^2 + 4*T*x2^2 - 4*T*x1*x2 - 3*x1^3*x2 - 32*T^2 + 16*T*x1^2", 2);
}

inline RatFn w22_a() {
    return rf("T*(5*x1^5*x2 + 5*x1*x2^5 + 4*x1^4*x2^2 + 4*x1^2*x2^4 + 3*x1^3*x2^3)"
              " + T^2*(-52*x1^3*x2 - 52*x1*x2^3 - 52*x1^2*x2^2 + 4*x1^4 + 4*x2^4)"
              " + T^3*(-16*x1^2 - 16*x2^2 + 208*x1*x2) + 320*T^4",
              2);
}
inline RatFn w22_p() {
    return rf("3/2*x1^4*x2^2 + 3/2*x1^2*x2^4 - 6*x1^3*x2^3"
              " + T*(6*x1^4 + 6*x2^4 - 8*x1*x2^3 - 8*x1^3*x2 + 40*x1^2*x2^2)"
              " + T^2*(-88*x1^2 - 88*x2^2 + 32*x1*x2) + 192*T^3",
              2);
}
// Q with explicit argument order: a is the first slot, b the second.
inline RatFn w22_q(int a, int b) {
    std::string s = "-3*xA^4*xB^2 + 7*xA^3*xB^3 - 9/2*xA^2*xB^4 + 3/2*xA*xB^5"
                    " + T*(-4*xA^4 + 4*xA^3*xB + 12*xA^2*xB^2 + 8*xB^4 - 32*xA*xB^3)"
                    " + T^2*(-24*xA*xB + 24*xA^2 + 48*xB^2) - 64*T^3";
    std::string out;
    for (size_t k = 0; k < s.size(); ++k) {
        if (s[k] == 'x' && k + 1 < s.size() && (s[k + 1] == 'A' || s[k + 1] == 'B')) {
            out += 'x';
            out += std::to_string(s[k + 1] == 'A' ? a : b);
            ++k;
        } else {
            out += s[k];
        }
    }
    return rf(out, 2);
}
inline RatFn w22_s() {
    return rf("23/2*x1^7*x2^5 + 23/2*x1^5*x2^7 - 10*x1^8*x2^4 - 10*x1^4*x2^8"
              " + 3*x1^9*x2^3 + 3*x1^3*x2^9 - 6*x1^6*x2^6"
              " + T*(-36*x1^2*x2^8 - 36*x1^8*x2^2 + 128*x1^4*x2^6 + 128*x1^6*x2^4 - 7*x1^7*x2^3"
              "      - 7*x1^3*x2^7 + 13*x1^9*x2 + 13*x1*x2^9 - 268*x1^5*x2^5)"
              " + T^2*(-156*x1^7*x2 - 156*x1*x2^7 + 388*x1^6*x2^2 + 388*x1^2*x2^6 + 4*x1^8 + 4*x2^8"
              "      + 284*x1^3*x2^5 + 284*x1^5*x2^3 - 320*x1^4*x2^4)"
              " + T^3*(-3376*x1^4*x2^2 - 3376*x1^2*x2^4 + 16*x1*x2^5 - 16*x2^6 - 16*x1^6"
              "      + 16*x1^5*x2 + 2912*x1^3*x2^3)"
              " + T^4*(12160*x1^2*x2^2 + 3392*x1^4 + 3392*x2^4 - 3712*x1*x2^3 - 3712*x1^3*x2)"
              " + T^5*(-10240*x1^2 - 10240*x2^2 + 2048*x1*x2) + 12288*T^6",
              2);
}

inline CorrFn w2_2() {
    CorrFn w(2, 2);
    w.part(0) = w22_p() * rf("1/(y1^4*y2^4*(x1-x2)^4)", 2) +
                w22_q(1, 2) * rf("1/(y1^3*y2^6*(x1-x2)^3)", 2) -
                w22_q(2, 1) * rf("1/(y1^6*y2^3*(x1-x2)^3)", 2) +
                w22_s() * rf("1/(y1^7*y2^7*(x1-x2)^4)", 2);
    w.part(1) = w22_a() * rf("1/(y1^7*y2^7)", 2);
    return w;
}
inline RatFn w2_2_xx_h2() { return rf("(98*T*x1^2 + 38*T^2 + 8*x1^4)/y1^10 - (8*x1^3 + 45*T*x1)/y1^9", 1); }
inline RatFn w2_2_xx_h0() { return rf("T*(20*T + 21*x1^2)/y1^10", 1); }

inline RatFn w31_q111() {
    return rf("x1^2*x2^3*x3^3 + x1^3*x2^3*x3^2 + x1^3*x2^2*x3^3"
              " + T*(8*x1^2*x2^2*x3^2 + 2*x1^2*x2^3*x3 + 2*x1*x2^3*x3^2 + 2*x1^3*x2*x3^2"
              "      + 2*x1^2*x2*x3^3 + 2*x1*x2^2*x3^3 + 2*x1^3*x2^2*x3 + 2*x1^3*x3^3"
              "      + 2*x1^3*x2^3 + 2*x2^3*x3^3)"
              " + T^2*(-8*x2^2*x3^2 - 8*x1^2*x2^2 - 8*x1^2*x3^2 - 32*x1*x2^2*x3 - 32*x1*x2*x3^2"
              "      - 32*x1^2*x2*x3 - 32*x1*x3^3 - 32*x1*x2^3 - 32*x1^3*x3 - 32*x2*x3^3"
              "      - 32*x2^3*x3 - 32*x1^3*x2)"
              " + T^3*(224*x1*x3 + 224*x2*x3 + 224*x1*x2 - 64*x1^2 - 64*x2^2 - 64*x3^2) + 640*T^4",
              3);
}

// Q_110 with slots (a, b, c); the printed polynomial has slots (x1, x2, x3).
inline RatFn w31_q110(int a, int b, int c) {
    std::string s =
        "2*xA^3*xB^4*xC^4 + 2*xA^4*xB^3*xC^4 - 3*xA^3*xB^3*xC^5 - xA^4*xB^4*xC^3"
        " + T*(-18*xB^3*xC^6 - 18*xA^3*xC^6 - 6*xA*xC^8 + 48*xA*xB^3*xC^5 + 24*xA^4*xB^3*xC^2"
        "      - 18*xA*xB^4*xC^4 + 6*xA^2*xB^3*xC^4 - 52*xA^3*xB^3*xC^3 - 6*xB*xC^8"
        "      - 12*xA^4*xB^4*xC + 36*xA^2*xB^2*xC^5 - 18*xA^4*xB*xC^4 + 48*xA^3*xB*xC^5"
        "      + 6*xA^3*xB^2*xC^4 - 48*xA^2*xB*xC^6 - 48*xA*xB^2*xC^6 + 6*xB^4*xC^5"
        "      - 12*xA^2*xB^4*xC^3 + 24*xA^3*xB^4*xC^2 + 28*xA*xB*xC^7 - 12*xA^4*xB^2*xC^3"
        "      + 18*xA^2*xC^7 + 18*xB^2*xC^7 + 6*xA^4*xC^5)"
        " + T^2*(88*xB*xC^6 + 48*xB^4*xC^3 - 32*xC^7 + 48*xA^4*xC^3 - 72*xB^2*xC^5"
        "      - 48*xB^3*xC^4 + 48*xA^2*xB^4*xC + 48*xA^4*xB^2*xC - 48*xA*xB^4*xC^2"
        "      - 48*xA^4*xB*xC^2 + 48*xA*xB^3*xC^3 - 144*xA^2*xB^2*xC^3 + 168*xA*xB^2*xC^4"
        "      + 168*xA^2*xB*xC^4 + 48*xA^3*xB*xC^3 - 288*xA*xB*xC^5 - 72*xA^2*xC^5"
        "      + 88*xA*xC^6 - 48*xA^3*xC^4)"
        " + T^3*(96*xA^2*xC^3 - 96*xA^3*xC^2 - 96*xA^3*xB^2 + 96*xB^2*xC^3 - 96*xA^2*xB^3"
        "      - 96*xB^3*xC^2 - 32*xA^4*xC - 32*xB^4*xC - 32*xA^4*xB - 32*xA*xB^4"
        "      + 64*xA^3*xB*xC + 64*xA*xB^3*xC - 256*xA*xB*xC^3 + 224*xB*xC^4 + 224*xA*xC^4)"
        " + T^4*(384*xA*xB^2 - 384*xB^2*xC + 384*xB*xC^2 + 384*xA*xC^2 + 384*xA^2*xB"
        "      - 384*xA^2*xC - 1024*xC^3 + 256*xA^3 + 256*xB^3 - 256*xA*xB*xC)"
        " + T^5*(2048*xC - 1024*xA - 1024*xB)";
    std::string out;
    for (size_t k = 0; k < s.size(); ++k) {
        if (s[k] == 'x' && k + 1 < s.size() && (s[k + 1] == 'A' || s[k + 1] == 'B' || s[k + 1] == 'C')) {
            out += 'x';
            out += std::to_string(s[k + 1] == 'A' ? a : (s[k + 1] == 'B' ? b : c));
            ++k;
        } else {
            out += s[k];
        }
    }
    return rf(out, 3);
}

inline CorrFn w3_1() {
    // Q_101(x1,x2,x3) = -Q_110(x1,x3,x2), Q_011(x1,x2,x3) = Q_110(x3,x2,x1)
    CorrFn w(3, 1);
    w.part(0) = w31_q111() * rf("1/(y1^5*y2^5*y3^5)", 3) +
                w31_q110(1, 2, 3) * rf("1/(y1^3*y2^3*y3^6*(x1-x3)^3*(x2-x3)^3)", 3) -
                w31_q110(1, 3, 2) * rf("1/(y1^3*y2^6*y3^3*(x1-x2)^3*(x2-x3)^3)", 3) +
                w31_q110(3, 2, 1) * rf("1/(y1^6*y2^3*y3^3*(x1-x2)^3*(x1-x3)^3)", 3);
    return w;
}
inline RatFn w3_1_xxx() {
    return rf("(3*x1^4 + 50*T*x1^2 + 40*T^2)/y1^11 - x1*(3*x1^4 + 160*T*x1^2 + 354*T^2)/y1^12", 1);
}

} // namespace gbe::golden

#endif
