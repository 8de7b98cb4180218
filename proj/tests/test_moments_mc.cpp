#include <catch2/catch_amalgamated.hpp>

#include "gbe/mc.hpp"
#include "gbe/moments.hpp"
#include "gbe/solver.hpp"
#include "support/golden.hpp"

using namespace gbe;
using golden::rf;

namespace {
OnePointFamily solver_family(Solver& s) {
    return [&s](int l) { return s.solve(1, l)->parts; };
}
} // namespace

TEST_CASE("binomial series oracle for the curve root") {
    // independent consistency: the half-power series squares back to 1 - 4Tu^2
    USeries root = curve_half_power(1, 16);
    USeries sq = root * root;
    CHECK((sq.coeff(0) - MPoly::constant(0, Rat(1))).is_zero());
    CHECK((sq.coeff(2) - MPoly::t_var(0).mul_scalar(Rat(-4))).is_zero());
    for (int k = 1; k <= 14; ++k)
        if (k != 2) CHECK(sq.coeff(k).is_zero());
    USeries inv = curve_half_power(-1, 16);
    USeries unit = root * inv;
    CHECK((unit.coeff(0) - MPoly::constant(0, Rat(1))).is_zero());
    for (int k = 1; k <= 14; ++k) CHECK(unit.coeff(k).is_zero());
}

TEST_CASE("expansion of 1/y gives central binomial coefficients") {
    USeries s = expand_inf(rf("1/y1", 1), 15);
    for (int k = 0; 2 * k + 1 <= 15; ++k) {
        MPoly expect = MPoly::monomial(0, VarExp::of_t(static_cast<uint8_t>(k)),
                                       binomial(static_cast<unsigned>(2 * k), static_cast<unsigned>(k)));
        CHECK((s.coeff(2 * k + 1) - expect).is_zero());
        if (2 * k <= 15) CHECK(s.coeff(2 * k).is_zero());
    }
}

TEST_CASE("resolvent expansion counts Catalan numbers") {
    USeries s = expand_inf(base_w1_0().part(0), 17);
    Rat catalan(1); // C_0, then C_{k+1} = C_k 2(2k+1)/(k+2)
    for (int k = 0; 2 * k + 1 <= 17; ++k) {
        MPoly expect = MPoly::monomial(0, VarExp::of_t(static_cast<uint8_t>(k + 1)), catalan);
        CHECK((s.coeff(2 * k + 1) - expect).is_zero());
        catalan = catalan * Rat(2 * (2 * k + 1)) / Rat(k + 2);
    }
}

TEST_CASE("W_1^{(1)} expands as -hbar T u^3 + O(u^5)") {
    USeries s = expand_inf(golden::w1_1().part(0), 7);
    CHECK(s.first_nonzero() == 3);
    CHECK((s.coeff(3) - MPoly::t_var(0).mul_scalar(Rat(-1))).is_zero());
    CHECK(s.coeff(4).is_zero());
    CHECK_FALSE(s.coeff(5).is_zero());
}

TEST_CASE("moment polynomials: first cases") {
    Solver solver;
    auto fam = solver_family(solver);

    MomentPoly m0 = moment_poly(0, fam);
    // m_0 = N
    CHECK(m0.total() == std::map<MomentPoly::Key, Rat>{{{1, 0, 0}, Rat(1)}});

    MomentPoly m1 = moment_poly(1, fam);
    // m_2 = T(N - 1 + 1/kappa)
    std::map<MomentPoly::Key, Rat> expect{
        {{1, 0, 1}, Rat(1)}, {{0, 0, 1}, Rat(-1)}, {{0, -1, 1}, Rat(1)}};
    CHECK(m1.total() == expect);
    CHECK(m1.eval(Rat(2), Rat(1), Rat(1)) == Rat(2));
    CHECK(m1.eval(Rat(1), Rat(2), Rat(1)) == Rat(1, 2));

    MomentPoly m2 = moment_poly(2, fam);
    CHECK(m2.eval(Rat(1), Rat(3), Rat(1)) == Rat(1, 3).pow(2) * Rat(3)); // 3 T^2/kappa^2
}

TEST_CASE("Gaussian oracle at N = 1") {
    Solver solver;
    auto fam = solver_family(solver);
    for (int k = 0; k <= 3; ++k) {
        MomentPoly m = moment_poly(k, fam);
        CHECK(check_gaussian_n1(k, m));
    }
    // (2k-1)!! values: T/kappa, 3T^2/kappa^2, 15 T^3/kappa^3
    MomentPoly m3 = moment_poly(3, fam);
    CHECK(m3.eval(Rat(1), Rat(1), Rat(2)) == Rat(15 * 8));
}

TEST_CASE("kappa -> 1/kappa symmetry of exact moments") {
    Solver solver;
    auto fam = solver_family(solver);
    for (int k = 0; k <= 3; ++k) CHECK(check_kappa_symmetry(moment_poly(k, fam)));
}

TEST_CASE("odd moments vanish: even u-orders are absent") {
    Solver solver;
    for (int l = 0; l <= 4; ++l)
        for (const auto& part : solver.solve(1, l)->parts) {
            if (part.is_zero()) continue;
            USeries s = expand_inf(part, 12);
            for (int k = 0; k <= 12; k += 2) CHECK(s.coeff(k).is_zero());
        }
}

TEST_CASE("tridiagonal sampler: N = 1 Gaussian and N = 2 moment") {
    McConfig cfg;
    cfg.N = 1;
    cfg.kappa = Rat(2);
    cfg.T = Rat(1);
    cfg.samples = 60000;
    cfg.seed = 42;
    cfg.k_max = 1;
    McEstimate est = sample_moments(cfg);
    // variance T/kappa = 1/2
    double z = (est.mean[0] - 0.5) / est.std_err[0];
    CHECK(std::abs(z) < 5.0);
    CHECK(est.rejected == 0);

    McConfig cfg2 = cfg;
    cfg2.N = 2;
    cfg2.kappa = Rat(1);
    cfg2.seed = 7;
    McEstimate est2 = sample_moments(cfg2);
    double z2 = (est2.mean[0] - 2.0) / est2.std_err[0];
    CHECK(std::abs(z2) < 5.0);
}

TEST_CASE("sampler determinism under fixed seed") {
    McConfig cfg;
    cfg.N = 4;
    cfg.kappa = Rat(3, 2);
    cfg.samples = 2000;
    cfg.seed = 123;
    cfg.k_max = 2;
    McEstimate a = sample_moments(cfg);
    McEstimate b = sample_moments(cfg);
    CHECK(a.mean == b.mean);
    CHECK(a.std_err == b.std_err);
}

TEST_CASE("mc_compare z-scores against exact moments") {
    Solver solver;
    auto fam = solver_family(solver);
    std::vector<MomentPoly> moments;
    for (int k = 0; k <= 2; ++k) moments.push_back(moment_poly(k, fam));

    McConfig cfg;
    cfg.N = 8;
    cfg.kappa = Rat(1, 2);
    cfg.T = Rat(1);
    cfg.samples = 50000;
    cfg.seed = 2024;
    cfg.k_max = 2;
    for (const auto& row : mc_compare(cfg, moments)) CHECK(std::abs(row.z) < 5.0);
}

TEST_CASE("semicircle second moment at N = 64") {
    Solver solver;
    auto fam = solver_family(solver);
    std::vector<MomentPoly> moments;
    for (int k = 0; k <= 1; ++k) moments.push_back(moment_poly(k, fam));
    McConfig cfg;
    cfg.N = 64;
    cfg.kappa = Rat(1);
    cfg.T = Rat(1);
    cfg.samples = 8000;
    cfg.seed = 11;
    cfg.k_max = 1;
    auto rows = mc_compare(cfg, moments);
    // exact finite-N prediction T(N-1+1/kappa) = N here, so m_2/N -> 1
    CHECK(std::abs(rows[0].z) < 5.0);
    CHECK(rows[0].predicted == Catch::Approx(64.0));
}
