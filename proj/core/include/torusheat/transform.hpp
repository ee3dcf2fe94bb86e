#ifndef TORUSHEAT_TRANSFORM_HPP
#define TORUSHEAT_TRANSFORM_HPP

#include <vector>

#include "torusheat/field.hpp"

namespace torusheat {

/// Analysis: tensor-grid samples -> band coefficients. The grid has one more
/// point than Nyquist per axis, so synthesis followed by analysis is exact on
/// the represented band; the spare bin is ignored.
SpectralField transform_forward(const GridField& g);

/// Synthesis: band coefficients -> samples on the lattice grid (real part;
/// imaginary residue of a Hermitian field is at rounding level).
GridField transform_inverse(const SpectralField& f);

/// Synthesis on a finer grid (zero-padded spectrum), for sup-norm and other
/// pointwise work on band-limited fields. Returns row-major samples and the
/// per-axis point counts via `dims`.
std::vector<double> synthesize_oversampled(const SpectralField& f, std::vector<int>& dims,
                                           int factor = 4, std::size_t max_points = std::size_t(1) << 22);

/// Max of |f| over the oversampled grid.
double oversampled_max_abs(const SpectralField& f, int factor = 4);

} // namespace torusheat

#endif
