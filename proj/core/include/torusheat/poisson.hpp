#ifndef TORUSHEAT_POISSON_HPP
#define TORUSHEAT_POISSON_HPP

#include <cstdint>
#include <vector>

#include "torusheat/lipschitz.hpp"
#include "torusheat/multiplier.hpp"
#include "torusheat/report.hpp"

namespace torusheat {

/// u = L^{-1} f (multiplier 1/lambda on n != 0). f must be mean-zero; the
/// solution is exact on the represented band and mean-zero.
SpectralField solve_poisson(const Spectrum& sp, const SpectralField& f);

/// X_i u as a field: multiplier i (tau_i . n).
SpectralField apply_direction(const Spectrum& sp, const SpectralField& f, std::size_t i);
/// X_i X_j u: multiplier -(tau_i . n)(tau_j . n).
SpectralField apply_direction_pair(const Spectrum& sp, const SpectralField& f, std::size_t i,
                                   std::size_t j);

/// Index pairs (i, j) for second-order sweeps: all pairs for d <= 4, a
/// seeded sample of 12 otherwise.
std::vector<std::pair<std::size_t, std::size_t>> sampled_pairs(std::size_t d, std::uint64_t seed);

/// Tabulates ||X_i u||_p and ||X_i X_j u||_p and asserts the second-order
/// norms equal ||R_i R_j f||_p within the dimension-free Riesz bound.
ExperimentReport sobolev_report(const Spectrum& sp, const SpectralField& u, double p);

enum class TailScale { Lp, Lambda, Dist };

struct TailOptions {
    TailScale scale = TailScale::Lp;
    double theta = 0.5;   // Lambda/Dist scales
    int order = 1;        // Lambda order n or Dist order k (theta < k)
    LambdaOptions lambda;
    DistOptions dist;
};

/// Tail curve s_m = || sum_{i=m..d} X_i^2 u || for m = 1..d in the chosen
/// scale, with the bound curve 2 (p* - 1) || vec R_{m d} f ||. Asserts
/// domination (Lp and Lambda scales), monotone decay, and that the full sum
/// reproduces -f on the band.
ExperimentReport tail_convergence(const Spectrum& sp, const SpectralField& u, double p,
                                  const TailOptions& opts = {});

struct LipschitzRegularityOptions {
    double theta = 0.5;
    double lambda_class = 0.0;  // required for the p in {1, inf} path
    std::uint64_t pair_seed = 3;
    LambdaOptions lambda;
};

/// Solves u = L^{-1} f and reports the seminorm ladder: Lambda_{theta+2}(u),
/// Lambda_{theta+1}(X_i u), Lambda_theta(X_i X_j u), each at its canonical
/// order. For 1 < p < inf asserts Lambda_theta(R_i R_j f) <= 2 (p*-1)
/// Lambda_theta(f); for p in {1, inf} reports the shifted-exponent seminorms
/// Lambda_{theta - 2 lambda, 1}(X_i X_j u) against Lambda_{theta, 2}(f), and
/// the distance-scale seminorms at beta = (1 - lambda) theta - 2 lambda.
ExperimentReport lipschitz_regularity_report(const Spectrum& sp, const SpectralField& f, double p,
                                             const LipschitzRegularityOptions& opts = {});

struct GradientBoundOptions {
    std::vector<double> p_list = {1.5, 2.0, 4.0};
    double t_min = 1e-3;
    double t_max = 10.0;
    std::size_t t_points = 24;
    std::size_t n_fields = 20;
    std::uint64_t seed = 9;
    bool endpoint_norms = true;  // also fit the p in {1, inf} envelope
};

struct GradientBoundFit {
    ExperimentReport report;
    double k_hat = 0.0;       // smallest K with |DH_t f| <= 2 K sqrt(p*) (p*-1) t^{-1/2} ||f||_p
    double k_spread = 0.0;    // max/min of per-p fitted K (p-stability)
    double c_hat = 0.0;       // envelope constant for p in {1, inf}
};

/// Fits the smallest constants making the heat-flow gradient bounds hold
/// across (field, t, p): interior p against 2 K sqrt(p*) (p*-1) t^{-1/2},
/// endpoint p against C t^{-1/2} max{M_0(t)^{3/2}, 1}. Fit-and-report only.
GradientBoundFit gradient_bound_check(const Spectrum& sp, const GradientBoundOptions& opts = {});

} // namespace torusheat

#endif
