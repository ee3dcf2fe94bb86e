#ifndef TORUSHEAT_STOCHASTIC_HPP
#define TORUSHEAT_STOCHASTIC_HPP

#include <cstdint>
#include <vector>

#include "torusheat/multiplier.hpp"
#include "torusheat/report.hpp"

namespace torusheat {

/// Euler scheme configuration for the killed background motion (generator
/// d^2/dy^2, so increments have variance 2 dt) coupled to Brownian motion on
/// the torus (coordinate variance 2 a_i dt).
///
/// Above y_cap the dbeta-integrands carry a factor e^{-y sqrt(lambda_min)}
/// and are dropped; the excursion above the cap is replaced by an exact
/// sample of its duration (stable-1/2 hitting law) and an exact Gaussian
/// advance of the torus coordinates. This keeps the path law of (beta, B)
/// exact at all times where beta <= y_cap and bounds the integrand omission
/// by e^{-2 y_cap}, while making the expected work per path finite (the raw
/// hitting time of a half-line has infinite mean).
struct PathConfig {
    double dt = 1e-3;
    double y0 = 3.0;
    std::size_t n_paths = 100000;
    std::uint64_t seed = 1;
    std::size_t max_steps = std::size_t(1) << 20;  // Euler steps below the cap
    double t_max = 1e7;                            // elapsed-time guard, excursions included
    double y_cap = 0.0;                            // 0 -> y0 + 2
    bool start_uniform = true;                     // B_0 ~ nu; otherwise x0
    std::vector<double> x0;
    bool keep_paths = false;                       // retain per-path values for dumps
    int threads = 0;                               // 0 -> hardware concurrency

    double cap() const { return y_cap > 0.0 ? y_cap : y0 + 1.5; }
};

struct PathBatch {
    std::size_t n_paths = 0;
    std::size_t n_hit = 0;
    std::size_t n_truncated = 0;
    double tau_mean = 0.0;
    double tau_se = 0.0;
    double tau_median = 0.0;
    std::vector<double> tau;              // per path (guard-clipped)
    std::vector<std::size_t> terminal_bins;  // 16-bin histogram of B_tau first coordinate

    double hitting_fraction() const {
        return n_paths ? static_cast<double>(n_hit) / static_cast<double>(n_paths) : 0.0;
    }
    double truncated_fraction() const {
        return n_paths ? static_cast<double>(n_truncated) / static_cast<double>(n_paths) : 0.0;
    }
};

/// Runs the killed diffusion and reports hitting statistics. Deterministic
/// per (seed, path index) and bit-stable across thread counts.
PathBatch simulate_paths(const PathConfig& cfg, const WeightModel& w);

/// Free diffusion probe (no killing): variance of the unwrapped coordinate
/// displacements at the given horizon, with standard errors.
struct DiffusionProbe {
    double horizon = 0.0;
    std::vector<double> coord_variance;
    std::vector<double> coord_se;
};
DiffusionProbe diffusion_probe(const PathConfig& cfg, const WeightModel& w, double horizon);

struct PairingResult {
    double estimate = 0.0;
    double se = 0.0;
    double reference = 0.0;   // finite-y0 spectral value
    double limit = 0.0;       // y0 -> inf value, -(1/2) <h, R_i f>
    double z = 0.0;
    double truncated_fraction = 0.0;
    double tau_mean = 0.0;    // sample statistics of the hitting times
    double tau_se = 0.0;
    std::vector<double> path_contributions;  // kept when cfg.keep_paths is set
    std::vector<double> path_tau;
    ExperimentReport report;
};

/// E_{y0}[ h(B_tau) * int_0^tau X_i Qf dbeta ] against the exact finite-y0
/// spectral reference (per-mode Green-function integral). Truncated paths
/// contribute through the martingale value Qh(beta_end, B_end), which is the
/// exact conditional completion up to an e^{-2 y_cap} covariation tail.
PairingResult mc_riesz_pairing(const Spectrum& sp, const SpectralField& h, const SpectralField& f,
                               std::size_t i, const PathConfig& cfg);

/// Second-order variant: the dB_i-component integrand X_j Qf against the
/// same weight, targeting -(1/2) <h, R_i R_j f> in the tall-start limit.
PairingResult mc_riesz_second_pairing(const Spectrum& sp, const SpectralField& h,
                                      const SpectralField& f, std::size_t i, std::size_t j,
                                      const PathConfig& cfg);

struct QvResult {
    double realized_mean = 0.0;
    double model_mean = 0.0;
    double diff_se = 0.0;
    double reference = 0.0;   // closed form sum |f_n|^2 (1 - e^{-2 y0 sqrt(lambda_n)})
    ExperimentReport report;
};

/// Realized squared increments of M = Qf(beta, B) against the discretized
/// quadratic-variation integrand 2(|d_y Qf|^2 + sum_i |X_i Qf|^2).
QvResult quadratic_variation_check(const Spectrum& sp, const SpectralField& f, const PathConfig& cfg);

struct SubordinationResult {
    double estimate = 0.0;
    double se = 0.0;
    double reference = 0.0;
    ExperimentReport report;
};

/// Averages H_tau f(x0) over simulated hitting times from height y and
/// compares with e^{-y sqrt(L)} f(x0).
SubordinationResult subordination_check(const Spectrum& sp, const SpectralField& f, double y,
                                        const std::vector<double>& x0, const PathConfig& cfg);

} // namespace torusheat

#endif
