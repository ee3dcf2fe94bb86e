#ifndef TORUSHEAT_FIELD_HPP
#define TORUSHEAT_FIELD_HPP

#include <complex>
#include <iosfwd>
#include <vector>

#include "torusheat/lattice.hpp"

namespace torusheat {

using Complex = std::complex<double>;

/// Fourier coefficients c_n of a function on the truncated torus, indexed by
/// the lattice iteration order. Normalization: f(x) = sum_n c_n e^{i n.x}
/// under normalized Haar measure, so the mean value is c_0.
class SpectralField {
  public:
    explicit SpectralField(FrequencyLattice lattice);
    SpectralField(FrequencyLattice lattice, std::vector<Complex> coefficients);

    const FrequencyLattice& lattice() const { return lattice_; }
    std::size_t size() const { return coefficients_.size(); }
    Complex& operator[](std::size_t i) { return coefficients_[i]; }
    const Complex& operator[](std::size_t i) const { return coefficients_[i]; }
    const std::vector<Complex>& coefficients() const { return coefficients_; }
    std::vector<Complex>& coefficients() { return coefficients_; }

    Complex at(const std::vector<int>& n) const { return coefficients_[lattice_.encode(n)]; }
    Complex mean() const { return coefficients_[lattice_.zero_index()]; }

    /// Hermitian symmetry residue max_n |c_{-n} - conj(c_n)|.
    double realness_residue() const;
    bool is_real(double tol = 1e-12) const { return realness_residue() <= tol; }
    bool is_mean_zero(double tol = 1e-14) const { return std::abs(mean()) <= tol; }

    /// Pointwise evaluation sum_n c_n e^{i n.x} (direct summation).
    Complex evaluate(const std::vector<double>& x) const;

    /// sum_n |c_n|^2, the squared L2 norm by Parseval.
    double energy() const;

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double c);

    /// Flat coefficient table, one row per lattice point: n_1,...,n_d,re,im.
    void write_csv(std::ostream& os) const;
    static SpectralField read_csv(std::istream& is, const FrequencyLattice& lattice);

  private:
    FrequencyLattice lattice_;
    std::vector<Complex> coefficients_;
};

/// Real samples on the tensor grid with N_i = 2 B_i + 2 points per axis,
/// row-major, x_k = 2 pi k / N_i.
class GridField {
  public:
    explicit GridField(FrequencyLattice lattice);
    GridField(FrequencyLattice lattice, std::vector<double> samples);

    const FrequencyLattice& lattice() const { return lattice_; }
    std::size_t size() const { return samples_.size(); }
    double& operator[](std::size_t i) { return samples_[i]; }
    const double& operator[](std::size_t i) const { return samples_[i]; }
    const std::vector<double>& samples() const { return samples_; }
    std::vector<double>& samples() { return samples_; }

    double max_abs() const;

  private:
    FrequencyLattice lattice_;
    std::vector<double> samples_;
};

} // namespace torusheat

#endif
