#ifndef GBE_MC_HPP
#define GBE_MC_HPP

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gbe/moments.hpp"

namespace gbe {

// Tridiagonal beta-Hermite sampling of the eigenvalue measure
//   prod_{i<j} |l_i - l_j|^{2 kappa} exp(-(N kappa / T) sum l_i^2 / 2).
// The base tridiagonal model (diagonal N(0,1), off-diagonal chi_{2 kappa (N-i)}/sqrt(2))
// has eigenvalue density prod |m_i - m_j|^{2 kappa} e^{-sum m_i^2/2}; matching
// the exponents e^{-(N kappa/T) l^2/2} <-> e^{-m^2/2} fixes the rescaling
// l = m sqrt(T/(N kappa)). The N=1 Gaussian oracle validates the scale.

struct McConfig {
    int N = 1;
    Rat kappa{1};
    Rat T{1};
    long samples = 100000;
    uint64_t seed = 1;
    int k_max = 2;
};

struct McEstimate {
    std::vector<double> mean;     // index k-1: mean of sum_i lambda_i^{2k}
    std::vector<double> std_err;  // standard error of that mean
    long samples = 0;
    long rejected = 0;
};

namespace detail {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace detail

// One draw of the spectrum (ascending eigenvalues).
inline std::vector<double> sample_spectrum_once(const McConfig& cfg, uint64_t index) {
    std::mt19937_64 rng(detail::splitmix64(cfg.seed ^ detail::splitmix64(index + 1)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    int n = cfg.N;
    double kappa = cfg.kappa.to_double();
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) diag[i] = gauss(rng);
    for (int i = 0; i < n - 1; ++i) {
        double dof = 2.0 * kappa * (n - 1 - i);
        std::gamma_distribution<double> gamma(dof / 2.0, 2.0);
        sub[i] = std::sqrt(gamma(rng)) / std::sqrt(2.0);
    }
    double scale = std::sqrt(cfg.T.to_double() / (n * kappa));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    std::vector<double> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = es.eigenvalues()[i] * scale;
    return out;
}

inline McEstimate sample_moments(const McConfig& cfg) {
    GBE_CHECK(cfg.N >= 1 && cfg.samples >= 1 && cfg.kappa.sign() > 0 && cfg.T.sign() > 0,
              "mc: bad configuration");
    McEstimate est;
    est.mean.assign(static_cast<size_t>(cfg.k_max), 0.0);
    est.std_err.assign(static_cast<size_t>(cfg.k_max), 0.0);
    std::vector<double> sum(static_cast<size_t>(cfg.k_max), 0.0),
        sumsq(static_cast<size_t>(cfg.k_max), 0.0);
    for (long s = 0; s < cfg.samples; ++s) {
        std::vector<double> lam = sample_spectrum_once(cfg, static_cast<uint64_t>(s));
        bool ok = true;
        for (double v : lam)
            if (!std::isfinite(v)) ok = false;
        if (!ok) {
            ++est.rejected; // count and skip non-converged draws
            continue;
        }
        for (int k = 1; k <= cfg.k_max; ++k) {
            double p = 0;
            for (double v : lam) p += std::pow(v, 2 * k);
            sum[static_cast<size_t>(k - 1)] += p;
            sumsq[static_cast<size_t>(k - 1)] += p * p;
        }
        ++est.samples;
    }
    for (int k = 1; k <= cfg.k_max; ++k) {
        double ns = static_cast<double>(est.samples);
        double mu = sum[static_cast<size_t>(k - 1)] / ns;
        double var = sumsq[static_cast<size_t>(k - 1)] / ns - mu * mu;
        est.mean[static_cast<size_t>(k - 1)] = mu;
        est.std_err[static_cast<size_t>(k - 1)] = std::sqrt(std::max(var, 0.0) / ns);
    }
    return est;
}

struct McCompareRow {
    int k = 0;
    double predicted = 0, estimate = 0, std_err = 0, z = 0;
};

// z-scores of the exact moment polynomials against the simulation.
inline std::vector<McCompareRow> mc_compare(const McConfig& cfg,
                                            const std::vector<MomentPoly>& moments) {
    McEstimate est = sample_moments(cfg);
    std::vector<McCompareRow> rows;
    for (int k = 1; k <= cfg.k_max; ++k) {
        McCompareRow row;
        row.k = k;
        row.predicted = moments[static_cast<size_t>(k)].eval(Rat(cfg.N), cfg.kappa, cfg.T).to_double();
        row.estimate = est.mean[static_cast<size_t>(k - 1)];
        row.std_err = est.std_err[static_cast<size_t>(k - 1)];
        row.z = row.std_err > 0 ? (row.estimate - row.predicted) / row.std_err : 0.0;
        rows.push_back(row);
    }
    return rows;
}

} // namespace gbe

#endif
