#ifndef TORUSHEAT_HEAT_HPP
#define TORUSHEAT_HEAT_HPP

#include <cstddef>
#include <vector>

#include "torusheat/multiplier.hpp"

namespace torusheat {

/// e^{-tL}: multiplier e^{-t lambda(n)}. t = 0 returns f unchanged.
SpectralField heat_apply(const Spectrum& sp, const SpectralField& f, double t);

/// d^order/dt^order of the heat flow: multiplier (-lambda)^order e^{-t lambda}.
SpectralField heat_time_derivative(const Spectrum& sp, const SpectralField& f, double t, int order);

/// e^{-y sqrt(L)}: the subordinated (harmonic extension) semigroup.
SpectralField poisson_apply(const Spectrum& sp, const SpectralField& f, double y);

/// lambda(n)^s on n != 0, zero at n = 0. Negative powers require a mean-zero
/// argument (the zero symbol value encodes that restriction).
SpectralField fractional_power(const Spectrum& sp, const SpectralField& f, double s);

/// Pointwise kernel density. Diagonal weights: product of 1-D theta factors
/// over the operator dimension. Matrix weights: direct lattice sum; throws if
/// the lattice tail estimate exceeds 1e-10 relative.
double kernel_density(const std::vector<double>& x, double t, const WeightModel& w);

struct KernelValue {
    double log_value = 0.0;           // log mu_t(e)
    std::size_t effective_dimension = 0;
    bool tail_significant = false;    // explicit list exhausted while terms still matter
};

/// log mu_t(e) = sum_i log theta(0, a_i t), summed adaptively: generator
/// rules extend past the operator dimension until 2 e^{-a_i t} drops below
/// 1e-12 (current sum + 1). Diagonal models only.
KernelValue kernel_at_identity(double t, const WeightModel& w);

/// M_0(t) = log sup h_t = log mu_t(e); positivity of all spectral
/// coefficients puts the sup at the identity.
double m0(double t, const WeightModel& w);

struct KernelDiagnostics {
    std::vector<double> t_grid;
    std::vector<double> log_mu;           // log mu_t(e)
    std::vector<double> m0;               // equals log_mu for these kernels
    std::vector<std::size_t> effective_dimension;
    bool tail_significant = false;
};

KernelDiagnostics kernel_diagnostics(const WeightModel& w, const std::vector<double>& t_grid);

/// Log-spaced grid helper, lo..hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t points);

} // namespace torusheat

#endif
