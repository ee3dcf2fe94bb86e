#ifndef TORUSHEAT_NORMS_HPP
#define TORUSHEAT_NORMS_HPP

#include <cstdint>
#include <limits>

#include "torusheat/field.hpp"

namespace torusheat {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct NormOptions {
    std::uint64_t seed = 2024;       // rank-1 lattice seed (d > 4)
    std::size_t points = 1 << 16;    // rank-1 lattice size
    int shifts = 8;                  // random shifts for the error estimate
    int oversample = 4;              // synthesis factor for p = infinity
};

struct NormResult {
    double value = 0.0;
    double standard_error = 0.0;     // zero for exact quadrature paths
};

/// L^p norm against normalized Haar measure. Tensor-grid quadrature up to
/// d = 4 (p = 2 by Parseval, exact); seeded rank-1 lattice sampling with a
/// reported standard error beyond; p = infinity takes the (oversampled)
/// sample maximum. Throws for p < 1, and for p != 2 on non-real fields.
NormResult lp_norm_detailed(const SpectralField& f, double p, const NormOptions& opts = {});
double lp_norm(const SpectralField& f, double p, const NormOptions& opts = {});

/// Same on grid samples (the grid is the quadrature rule).
double lp_norm(const GridField& g, double p);

} // namespace torusheat

#endif
