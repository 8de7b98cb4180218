#include <catch2/catch_amalgamated.hpp>

#include "gbe/recursions.hpp"
#include "support/golden.hpp"

using namespace gbe;
using golden::rf;

TEST_CASE("w10 chain reproduces the top hbar coefficients") {
    Recursions rec;
    CHECK(RatFn::equal(rec.w10(1), rf("1/(2*y1) - x1/(2*y1^2)", 1)));
    CHECK(RatFn::equal(rec.w10(2), rf("-x1/y1^4 + (x1^2 + T)/y1^5", 1)));
    CHECK(RatFn::equal(rec.w10(3), rf("5*(x1^2 + T)/y1^7 - 5*x1*(x1^2 + 2*T)/y1^8", 1)));
}

TEST_CASE("p11/p12 slot recursion") {
    Recursions rec;
    auto p1 = rec.p11_p12(1);
    CHECK((p1.p1 - MPoly::constant(1, Rat(1, 2))).is_zero());
    CHECK((p1.p2 - MPoly::x_var(1, 1).mul_scalar(Rat(-1, 2))).is_zero());
    auto p2 = rec.p11_p12(2);
    CHECK((p2.p1 - MPoly::x_var(1, 1).mul_scalar(Rat(-1))).is_zero());
    CHECK((p2.p2 - (MPoly::x_var(1, 1, 2) + MPoly::t_var(1))).is_zero());
    auto p3 = rec.p11_p12(3);
    CHECK((p3.p1 - golden::poly("5*(x1^2 + T)")).is_zero());
    CHECK((p3.p2 - golden::poly("-5*x1*(x1^2 + 2*T)")).is_zero());
    for (int g = 1; g <= 8; ++g) {
        auto p = rec.p11_p12(g);
        CHECK(p.leading_sum_zero());
        CHECK(p.p1.degree_in(1) == g - 1);
        CHECK(p.p2.degree_in(1) == g);
    }
}

TEST_CASE("w20 chain reproduces the printed diagonals") {
    Recursions rec;
    CHECK(RatFn::equal(rec.w20(0), rf("T/y1^4", 1)));
    CHECK(RatFn::equal(rec.w20(1), rf("(x1^2 + 4*T)/(2*y1^6) - x1*(x1^2 + 18*T)/(2*y1^7)", 1)));
    CHECK(RatFn::equal(rec.w20(2),
                       rf("(98*T*x1^2 + 38*T^2 + 8*x1^4)/y1^10 - (8*x1^3 + 45*T*x1)/y1^9", 1)));
}

TEST_CASE("w12 chain reproduces the subleading coefficients") {
    Recursions rec;
    CHECK(rec.w12(1).is_zero());
    CHECK(RatFn::equal(rec.w12(2), rf("T/y1^5", 1)));
    CHECK(RatFn::equal(rec.w12(3), rf("(x1^2 + 6*T)/(2*y1^7) - x1*(x1^2 + 30*T)/(2*y1^8)", 1)));
    CHECK(RatFn::equal(
        rec.w12(4),
        rf("(23*x1^4 + 454*T*x1^2 + 176*T^2)/(2*y1^11) - (23*x1^3 + 180*T*x1)/(2*y1^10)", 1)));
}

TEST_CASE("leading coefficient identity") {
    CHECK(leading_identity(1)); // both sides 1
    CHECK(Rat(1) * Rat(2 * 1 - 1) == Rat(1));
    CHECK(leading_identity(2)); // both sides 6
    CHECK(Rat(2) * Rat(2 * 2 - 1) == Rat(6));
    for (int g = 1; g <= 12; ++g) CHECK(leading_identity(g));
    CHECK(leading_identity_symbolic());
}

TEST_CASE("oracle equivalence against the solver") {
    Solver solver;
    CHECK(crosscheck(2, solver)); // printed formulas only
    CHECK(crosscheck(4, solver)); // two independent code paths agree
}

TEST_CASE("PPair degrees and parities track the theorem") {
    Recursions rec;
    for (int g = 1; g <= 7; ++g) {
        auto q = rec.p21_p22(g);
        CHECK(q.p1.degree_in(1) == g + 1);
        CHECK(q.p2.degree_in(1) == g + 2);
        CHECK(q.leading_sum_zero());
        CHECK(detail::parity_matches_degree(q.p1));
        CHECK(detail::parity_matches_degree(q.p2));
    }
    for (int g = 3; g <= 7; ++g) {
        auto q = rec.p13_p14(g);
        CHECK(q.p1.degree_in(1) == g - 1);
        CHECK(q.p2.degree_in(1) == g);
        CHECK(q.leading_sum_zero());
    }
}
