#ifndef TORUSHEAT_LIPSCHITZ_HPP
#define TORUSHEAT_LIPSCHITZ_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "torusheat/multiplier.hpp"
#include "torusheat/norms.hpp"
#include "torusheat/report.hpp"

namespace torusheat {

/// A computed seminorm value with the location of its supremum and
/// grid-refinement diagnostics.
struct SeminormReport {
    std::string scale;               // "lambda", "lambda_frac", or "dist"
    double value = 0.0;
    double theta = 0.0;
    double order = 0.0;              // n, eta, or k
    double p = 2.0;
    double argmax_t = 0.0;           // lambda scales
    std::vector<double> argmax_y;    // dist scale
    double argmax_dist = 0.0;        // d(e, argmax_y)
    bool boundary_attained = false;  // sup sits on the grid edge
    double refinement_delta = 0.0;   // relative change under grid doubling
    double estimator_error = 0.0;    // nonzero when sampling-based norms ran
    bool trivially_zero = false;     // constant input: 0 by convention
};

struct LambdaOptions {
    double t_min = 1e-6;
    double t_max = 1e2;
    std::size_t t_points = 240;
    bool golden_refine = true;
    NormOptions norms;
};

/// Lambda^p_{theta,n}(f) = sup_t t^{n - theta/2} || d^n/dt^n H_t f ||_p,
/// estimated on a log t-grid, refined by golden-section search around the
/// grid argmax. Requires 0 < theta <= 2n (at the closed edge the supremum
/// sits at the small-t boundary and is flagged). The mean component never
/// contributes, so constants report zero.
SeminormReport lambda_seminorm(const Spectrum& sp, const SpectralField& f, double theta, int order,
                               double p, const LambdaOptions& opts = {});

/// Fractional-order variant: multiplier lambda^eta e^{-t lambda}, 0 < theta <= 2 eta.
SeminormReport lambda_seminorm_fractional(const Spectrum& sp, const SpectralField& f, double theta,
                                          double eta, double p, const LambdaOptions& opts = {});

struct DistOptions {
    std::uint64_t sampler_seed = 5;
    std::size_t random_pairs = 100;
    int levels = 24;          // axis magnitudes per direction
    double level_base = 2.0;  // dyadic keeps the sample closed under doubling
    bool refine = true;
    NormOptions norms;
};

/// L^p_{theta,k}(f) = sup_y || Delta_y^k f ||_p / d(e,y)^theta over the
/// translation sample. Requires 0 < theta <= k (the theta = k edge is the
/// classical Lipschitz ratio, where the supremum sits at the small-shift
/// boundary).
SeminormReport dist_seminorm(const Spectrum& sp, const SpectralField& f, double theta, int k,
                             double p, const DistOptions& opts = {});
SeminormReport dist_seminorm(const Spectrum& sp, const SpectralField& f, double theta, int k,
                             double p, const std::vector<std::vector<double>>& y_sample,
                             const DistOptions& opts = {});

/// Herz two-sided order-raising: (2^k - 2^theta) L_k <= k L_{k+1} and
/// L_{k+1} <= 2 L_k on the shared (doubling-closed) translation sample.
ExperimentReport herz_check(const Spectrum& sp, const std::vector<SpectralField>& family,
                            double theta, int k, double p, const DistOptions& opts = {});

/// Test family for the scale-comparison experiments: lacunary cosine series
/// sum_k 2^{-theta k} cos(2^k x + phase), single modes, and random
/// polynomial-decay fields.
std::vector<SpectralField> comparison_family(const FrequencyLattice& lattice, std::uint64_t seed,
                                             std::size_t count, double theta);

struct ScaleComparison {
    ExperimentReport report;
    std::vector<double> ratios;       // per family member; NaN for 0/0 entries
    double max_over_median = 0.0;
};

/// Distance scale controls the semigroup scale: ratio family
/// Lambda^p_beta(f) / L^p_theta(f) with beta = (1-lambda) theta - 2 lambda
/// (order-2 variant with beta_2 = (1-lambda) theta - 4 lambda when theta > 1).
/// Asserts max/median <= ratio_cap over the family.
ScaleComparison compare_scales_forward(const Spectrum& sp, const std::vector<SpectralField>& family,
                                       double theta, double lambda_class, double p,
                                       double ratio_cap = 20.0, const LambdaOptions& lopts = {},
                                       const DistOptions& dopts = {});

/// Semigroup scale controls the distance scale: L^p_theta / Lambda^p_theta
/// for 1 < p < infinity; for p in {1, inf} under CK-lambda the distance scale
/// runs at beta = theta / (1 + 3 lambda).
ScaleComparison compare_scales_backward(const Spectrum& sp, const std::vector<SpectralField>& family,
                                        double theta, double p, double lambda_class = 0.0,
                                        double ratio_cap = 20.0, const LambdaOptions& lopts = {},
                                        const DistOptions& dopts = {});

} // namespace torusheat

#endif
