#ifndef TORUSHEAT_MULTIPLIER_HPP
#define TORUSHEAT_MULTIPLIER_HPP

#include <functional>
#include <vector>

#include "torusheat/field.hpp"
#include "torusheat/weight_model.hpp"

namespace torusheat {

/// Eigenvalue of the Laplacian on the character e^{i n.x}: sum_i a_i n_i^2
/// for diagonal weights, n^t A n for the matrix model. Zero iff n = 0.
double eigenvalue(const std::vector<int>& n, const WeightModel& w);

/// Symbol of the i-th first-order field X_i on e^{i n.x}: i (tau_i . n).
/// Purely imaginary and odd in n.
Complex direction_symbol(std::size_t i, const std::vector<int>& n, const WeightModel& w);

using SymbolFn = std::function<Complex(const std::vector<int>&)>;

/// c'_n = m(n) c_n. Throws on a non-finite symbol value. Hermitian symbols
/// (m(-n) = conj m(n)) preserve real-valuedness.
SpectralField apply_multiplier(const SpectralField& f, const SymbolFn& m);

/// Precomputed per-lattice tables for one (lattice, weight model) pair:
/// eigenvalues lambda(n) and direction components tau_i . n. All diagonal
/// operators (heat, Poisson, fractional powers, Riesz) are driven off these.
class Spectrum {
  public:
    Spectrum(FrequencyLattice lattice, WeightModel weights);

    const FrequencyLattice& lattice() const { return lattice_; }
    const WeightModel& weights() const { return weights_; }
    std::size_t dimension() const { return lattice_.dimension(); }

    double eigenvalue(std::size_t index) const { return eigenvalues_[index]; }
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    /// Smallest nonzero eigenvalue on the lattice (the represented spectral gap).
    double spectral_gap() const { return gap_; }

    /// tau_i . n for 1-based direction i, per lattice index.
    const std::vector<double>& direction_dots(std::size_t i) const { return dots_[i - 1]; }

    /// Apply a real function of the eigenvalue as a multiplier.
    SpectralField apply_eigen(const SpectralField& f, const std::function<double(double)>& m) const;

  private:
    FrequencyLattice lattice_;
    WeightModel weights_;
    std::vector<double> eigenvalues_;
    std::vector<std::vector<double>> dots_;
    double gap_;
};

} // namespace torusheat

#endif
