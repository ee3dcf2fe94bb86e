#ifndef TORUSHEAT_RANDOM_FIELD_HPP
#define TORUSHEAT_RANDOM_FIELD_HPP

#include <cstdint>
#include <vector>

#include "torusheat/field.hpp"

namespace torusheat {

enum class DecayProfile { FlatBand, Polynomial, Exponential };

/// Seeded Hermitian-symmetric (hence real-valued) field with |c_n| bounded by
/// the decay envelope: 1 (flat band), (1+|n|)^-alpha, or e^{-gamma |n|}.
/// Deterministic for a fixed seed; c_0 = 0 when mean_zero is set.
SpectralField random_field(const FrequencyLattice& lattice, std::uint64_t seed,
                           DecayProfile profile, double param, bool mean_zero);

/// cos(n.x): coefficients 1/2 at +-n.
SpectralField single_mode(const FrequencyLattice& lattice, const std::vector<int>& n);

/// Fixed trial dictionary for operator-norm lower bounds: single modes on the
/// axes and low mixed modes, seeded random fields at the three decay
/// profiles, and +-1 sign patterns on the low-frequency box. All mean-zero.
std::vector<SpectralField> trial_dictionary(const FrequencyLattice& lattice, std::uint64_t seed,
                                            int seeds_per_profile = 4);

} // namespace torusheat

#endif
