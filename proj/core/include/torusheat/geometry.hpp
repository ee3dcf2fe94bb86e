#ifndef TORUSHEAT_GEOMETRY_HPP
#define TORUSHEAT_GEOMETRY_HPP

#include <cstdint>
#include <vector>

#include "torusheat/multiplier.hpp"
#include "torusheat/report.hpp"

namespace torusheat {

/// Point on the torus, coordinates reduced mod 2pi at construction.
class TorusPoint {
  public:
    explicit TorusPoint(std::vector<double> coords);
    static TorusPoint identity(std::size_t d) { return TorusPoint(std::vector<double>(d, 0.0)); }

    std::size_t dimension() const { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<double>& coords() const { return coords_; }

  private:
    std::vector<double> coords_;
};

/// Arc distance on the circle, min(|dx|, 2pi - |dx|).
double arc_distance(double a, double b);

/// Intrinsic distance of the Dirichlet form. Diagonal weights: weighted flat
/// metric with per-axis arc distances scaled by 1/sqrt(a_i). Matrix weights:
/// min over winding vectors |m_i| <= W of (delta - 2pi m)^t A^{-1} (delta -
/// 2pi m); W starts at 2 and doubles (cap 8) whenever the minimum sits on the
/// search boundary, then throws.
double intrinsic_distance(const TorusPoint& x, const TorusPoint& y, const WeightModel& w);

/// k-th translation difference, realized as the multiplier (e^{i n.y} - 1)^k
/// so off-grid shifts y are exact on the represented band.
SpectralField difference_operator(const SpectralField& f, const std::vector<double>& y, int k);

/// Translation-vector sample used for distance-seminorm suprema: each axis at
/// magnitudes pi * base^{-j} (j = 0..levels-1; dyadic by default, which keeps
/// the sample closed under doubling) plus seeded random vectors paired with
/// their doubles.
std::vector<std::vector<double>> translation_sample(std::size_t d, std::uint64_t seed,
                                                    std::size_t random_pairs = 100,
                                                    int levels = 24, double base = 2.0);

struct GaussianBoundOptions {
    double lambda = 0.5;
    double t_min = 1e-4;
    double t_max = 1.0;
    std::size_t t_points = 40;
    std::size_t x_samples = 200;
    std::uint64_t seed = 1;
    std::size_t mesh_points = 64;  // per axis of the (A, C) log mesh
};

struct GaussianBoundFit {
    ExperimentReport report;
    double a = 0.0;  // fitted constants; valid when report.passed
    double c = 0.0;
};

/// Searches a log mesh for constants (A, C) with
///   log mu_t(x) <= A / t^lambda - d(e,x)^2 / (C t)
/// at every sampled (t, x); reports the smallest admissible C. The kernel is
/// the full product density (adaptive tail past the truncation dimension).
GaussianBoundFit verify_gaussian_bound(const WeightModel& w, const GaussianBoundOptions& opts);

/// ||Delta_y f||_p <= d(e,y) ||Gamma(f,f)^{1/2}||_p for each sampled y.
ExperimentReport poincare_check(const Spectrum& sp, const SpectralField& f,
                                const std::vector<std::vector<double>>& y_sample, double p);

/// Pointwise carre du champ (sum_i |X_i f|^2)^{1/2} on an oversampled grid;
/// `dims` returns the evaluation grid shape.
std::vector<double> carre_du_champ_sqrt(const Spectrum& sp, const SpectralField& f,
                                        std::vector<int>& dims, int oversample = 2);

} // namespace torusheat

#endif
