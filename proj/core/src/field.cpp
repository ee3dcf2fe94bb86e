#include "torusheat/field.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace torusheat {

SpectralField::SpectralField(FrequencyLattice lattice)
    : lattice_(std::move(lattice)), coefficients_(lattice_.size(), Complex(0.0, 0.0)) {}

SpectralField::SpectralField(FrequencyLattice lattice, std::vector<Complex> coefficients)
    : lattice_(std::move(lattice)), coefficients_(std::move(coefficients)) {
    if (coefficients_.size() != lattice_.size())
        throw std::invalid_argument("SpectralField: coefficient count does not match lattice");
}

double SpectralField::realness_residue() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
        const std::size_t j = lattice_.negate(i);
        if (j < i) continue;
        worst = std::max(worst, std::abs(coefficients_[j] - std::conj(coefficients_[i])));
    }
    return worst;
}

Complex SpectralField::evaluate(const std::vector<double>& x) const {
    if (x.size() != lattice_.dimension())
        throw std::invalid_argument("SpectralField::evaluate: dimension mismatch");
    Complex acc(0.0, 0.0);
    std::vector<int> n;
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
        if (coefficients_[i] == Complex(0.0, 0.0)) continue;
        lattice_.decode(i, n);
        double phase = 0.0;
        for (std::size_t axis = 0; axis < x.size(); ++axis) phase += n[axis] * x[axis];
        acc += coefficients_[i] * std::polar(1.0, phase);
    }
    return acc;
}

double SpectralField::energy() const {
    double s = 0.0;
    for (const Complex& c : coefficients_) s += std::norm(c);
    return s;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    if (!(lattice_ == other.lattice_)) throw std::invalid_argument("SpectralField: lattice mismatch");
    for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] += other.coefficients_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    if (!(lattice_ == other.lattice_)) throw std::invalid_argument("SpectralField: lattice mismatch");
    for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] -= other.coefficients_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double c) {
    for (Complex& z : coefficients_) z *= c;
    return *this;
}

void SpectralField::write_csv(std::ostream& os) const {
    std::vector<int> n;
    os.precision(17);
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
        lattice_.decode(i, n);
        for (int nk : n) os << nk << ',';
        os << coefficients_[i].real() << ',' << coefficients_[i].imag() << '\n';
    }
}

SpectralField SpectralField::read_csv(std::istream& is, const FrequencyLattice& lattice) {
    SpectralField f(lattice);
    std::string line;
    std::vector<int> n(lattice.dimension());
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        for (std::size_t axis = 0; axis < lattice.dimension(); ++axis) {
            std::getline(row, cell, ',');
            n[axis] = std::stoi(cell);
        }
        std::getline(row, cell, ',');
        const double re = std::stod(cell);
        std::getline(row, cell, ',');
        const double im = std::stod(cell);
        f[lattice.encode(n)] = Complex(re, im);
    }
    return f;
}

GridField::GridField(FrequencyLattice lattice)
    : lattice_(std::move(lattice)), samples_(lattice_.grid_size(), 0.0) {}

GridField::GridField(FrequencyLattice lattice, std::vector<double> samples)
    : lattice_(std::move(lattice)), samples_(std::move(samples)) {
    if (samples_.size() != lattice_.grid_size())
        throw std::invalid_argument("GridField: sample count does not match lattice grid");
}

double GridField::max_abs() const {
    double m = 0.0;
    for (double v : samples_) m = std::max(m, std::abs(v));
    return m;
}

} // namespace torusheat
