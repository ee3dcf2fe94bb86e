#include "torusheat/multiplier.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace torusheat {

double eigenvalue(const std::vector<int>& n, const WeightModel& w) {
    if (n.size() != w.dimension()) throw std::invalid_argument("eigenvalue: dimension mismatch");
    const std::size_t d = n.size();
    if (w.is_diagonal()) {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            s += w.weights()[i] * static_cast<double>(n[i]) * n[i];
        return s;
    }
    double s = 0.0;
    for (std::size_t i = 1; i <= d; ++i)
        for (std::size_t j = 1; j <= d; ++j)
            s += w.matrix_entry(i, j) * n[i - 1] * n[j - 1];
    return s;
}

Complex direction_symbol(std::size_t i, const std::vector<int>& n, const WeightModel& w) {
    if (i == 0 || i > w.dimension()) throw std::out_of_range("direction_symbol: index out of range");
    std::vector<double> v(n.begin(), n.end());
    return Complex(0.0, w.direction_dot(i, v));
}

SpectralField apply_multiplier(const SpectralField& f, const SymbolFn& m) {
    SpectralField out(f.lattice());
    std::vector<int> n;
    for (std::size_t i = 0; i < f.size(); ++i) {
        f.lattice().decode(i, n);
        const Complex s = m(n);
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw std::domain_error("apply_multiplier: non-finite symbol value");
        out[i] = s * f[i];
    }
    return out;
}

Spectrum::Spectrum(FrequencyLattice lattice, WeightModel weights)
    : lattice_(std::move(lattice)), weights_(std::move(weights)) {
    if (lattice_.dimension() != weights_.dimension())
        throw std::invalid_argument("Spectrum: lattice and weights dimensions differ");
    const std::size_t d = lattice_.dimension();
    eigenvalues_.resize(lattice_.size());
    dots_.assign(d, std::vector<double>(lattice_.size()));
    gap_ = std::numeric_limits<double>::infinity();

    std::vector<int> n;
    std::vector<double> v(d);
    for (std::size_t idx = 0; idx < lattice_.size(); ++idx) {
        lattice_.decode(idx, n);
        for (std::size_t axis = 0; axis < d; ++axis) v[axis] = n[axis];
        const double lam = torusheat::eigenvalue(n, weights_);
        eigenvalues_[idx] = lam;
        if (lam > 0.0 && lam < gap_) gap_ = lam;
        for (std::size_t i = 1; i <= d; ++i) dots_[i - 1][idx] = weights_.direction_dot(i, v);
    }
}

SpectralField Spectrum::apply_eigen(const SpectralField& f,
                                    const std::function<double(double)>& m) const {
    if (!(f.lattice() == lattice_)) throw std::invalid_argument("Spectrum: lattice mismatch");
    SpectralField out(lattice_);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double s = m(eigenvalues_[i]);
        if (!std::isfinite(s)) throw std::domain_error("Spectrum: non-finite symbol value");
        out[i] = s * f[i];
    }
    return out;
}

} // namespace torusheat
