#include <catch2/catch_amalgamated.hpp>

#include "gbe/conjecture.hpp"
#include "gbe/diagjet.hpp"
#include "gbe/merge.hpp"
#include "support/golden.hpp"

using namespace gbe;
using golden::rf;

namespace {
std::vector<RatFn> merged_parts(Solver& s, int n, int g) {
    std::vector<RatFn> out;
    for (const auto& p : s.solve(n, g)->parts) out.push_back(merge_all(p));
    return out;
}
} // namespace

TEST_CASE("jet diagonals match the printed coinciding forms") {
    JetSolver js;
    CHECK(RatFn::equal(js.diagonal(2, 0)[0], golden::w2_0_xx()));
    CHECK(RatFn::equal(js.diagonal(3, 0)[0], golden::w3_0_xxx()));
    CHECK(RatFn::equal(js.diagonal(4, 0)[0], golden::w4_0_x4()));
    CHECK(RatFn::equal(js.diagonal(2, 1)[0], golden::w2_1_xx()));
    CHECK(RatFn::equal(js.diagonal(2, 2)[0], golden::w2_2_xx_h2()));
    CHECK(RatFn::equal(js.diagonal(2, 2)[1], golden::w2_2_xx_h0()));
    CHECK(RatFn::equal(js.diagonal(3, 1)[0], golden::w3_1_xxx()));
}

TEST_CASE("jet one-point chain equals the solver chain") {
    JetSolver js;
    Solver solver;
    for (int g = 0; g <= 5; ++g) {
        auto jet = js.diagonal(1, g);
        auto ref = solver.solve(1, g)->parts;
        REQUIRE(jet.size() == ref.size());
        for (size_t r = 0; r < ref.size(); ++r) CHECK(RatFn::equal(jet[r], ref[r]));
    }
}

TEST_CASE("jet diagonals agree with merge over the multivariate route") {
    JetSolver js;
    Solver solver;
    for (int n = 2; n <= 5; ++n)
        for (int g = 0; 2 * g + n <= 7; ++g) {
            auto jet = js.diagonal(n, g);
            auto ref = merged_parts(solver, n, g);
            REQUIRE(jet.size() == ref.size());
            for (size_t r = 0; r < ref.size(); ++r) {
                INFO("(n,g,r) = (" << n << "," << g << "," << r << ")");
                CHECK(RatFn::equal(jet[r], ref[r]));
            }
        }
}

TEST_CASE("restricted jets carry correct first-order data") {
    // J(x; e) of W_2^{(0)} to order 1 equals T/y^4 + e d/dx2 W_2^{(0)}|_diag.
    JetSolver js;
    Solver solver;
    const JetFamily& fam = js.jets(2, 0, 1);
    REQUIRE(fam.order >= 1);

    // order-0 part: the diagonal
    RatFn c0 = jetdetail::offset_to_zero(fam.parts[0], 2);
    CHECK(RatFn::equal(c0.remap_points(1, {0, 1}), golden::w2_0_xx()));

    // order-1 coefficient: d/dx2 W_2^{(0)}(x1, x2) at x2 -> x1
    RatFn d2 = solver.solve(2, 0)->part(0).derive(2);
    RatFn expect = merge_pair(d2, 1, 2);
    RatFn c1 = jetdetail::div_offset(fam.parts[0] - c0, 2);
    c1 = jetdetail::offset_to_zero(c1, 2);
    CHECK(RatFn::equal(c1.remap_points(1, {0, 1}), expect));
}

TEST_CASE("jets reach beyond the multivariate budget") {
    JetSolver js;
    // (6,0) diagonal: feasible multivariately too, but cheap for jets
    auto d60 = js.diagonal(6, 0);
    StructReport rep = check_structure(6, 0, d60);
    CHECK(rep.pass());
    CHECK(rep.asym_measured == 3 * 6 - 2);
}
