#include "torusheat/weight_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace torusheat {

WeightModel::WeightModel(Kind kind, std::size_t d, double param)
    : kind_(kind), d_(d), param_(param) {
    if (d == 0) throw std::invalid_argument("WeightModel: dimension must be positive");
}

WeightModel WeightModel::power(double lambda, std::size_t d) {
    if (lambda <= 0.0) throw std::invalid_argument("WeightModel::power: lambda must be positive");
    WeightModel w(Kind::Power, d, lambda);
    w.weights_.resize(d);
    for (std::size_t i = 1; i <= d; ++i)
        w.weights_[i - 1] = std::pow(static_cast<double>(i), 1.0 / lambda);
    return w;
}

WeightModel WeightModel::geometric(double sigma, std::size_t d) {
    if (sigma <= 0.0) throw std::invalid_argument("WeightModel::geometric: sigma must be positive");
    WeightModel w(Kind::Geometric, d, sigma);
    w.weights_.resize(d);
    for (std::size_t i = 1; i <= d; ++i)
        w.weights_[i - 1] = std::exp2(std::pow(static_cast<double>(i), sigma));
    return w;
}

WeightModel WeightModel::explicit_list(std::vector<double> weights) {
    if (weights.empty()) throw std::invalid_argument("WeightModel: empty weight list");
    for (double a : weights)
        if (!(a > 0.0)) throw std::invalid_argument("WeightModel: weights must be strictly positive");
    WeightModel w(Kind::Explicit, weights.size(), 0.0);
    w.weights_ = std::move(weights);
    return w;
}

WeightModel WeightModel::matrix(std::vector<double> a, std::size_t d) {
    if (a.size() != d * d) throw std::invalid_argument("WeightModel::matrix: size mismatch");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(a[i * d + j] - a[j * d + i]) > 1e-14 * (std::abs(a[i * d + j]) + 1.0))
                throw std::invalid_argument("WeightModel::matrix: A must be symmetric");

    WeightModel w(Kind::Matrix, d, 0.0);
    w.matrix_ = a;

    // Lower Cholesky A = L L^t, then T = L^t is the upper factor with T^t T = A.
    std::vector<double> lower(d * d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        double diag = a[j * d + j];
        for (std::size_t k = 0; k < j; ++k) diag -= lower[j * d + k] * lower[j * d + k];
        if (!(diag > 0.0)) throw std::invalid_argument("WeightModel::matrix: A is not positive definite");
        lower[j * d + j] = std::sqrt(diag);
        for (std::size_t i = j + 1; i < d; ++i) {
            double s = a[i * d + j];
            for (std::size_t k = 0; k < j; ++k) s -= lower[i * d + k] * lower[j * d + k];
            lower[i * d + j] = s / lower[j * d + j];
        }
    }
    w.factor_.assign(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) w.factor_[i * d + j] = lower[j * d + i];

    // A^{-1} via the factor: solve T^t T X = I column by column.
    w.inverse_.assign(d * d, 0.0);
    for (std::size_t col = 0; col < d; ++col) {
        std::vector<double> y(d, 0.0);
        // forward solve T^t y = e_col (T^t is lower triangular)
        for (std::size_t i = 0; i < d; ++i) {
            double s = (i == col) ? 1.0 : 0.0;
            for (std::size_t k = 0; k < i; ++k) s -= w.factor_[k * d + i] * y[k];
            y[i] = s / w.factor_[i * d + i];
        }
        // back solve T x = y
        for (std::size_t ii = d; ii-- > 0;) {
            double s = y[ii];
            for (std::size_t k = ii + 1; k < d; ++k) s -= w.factor_[ii * d + k] * w.inverse_[k * d + col];
            w.inverse_[ii * d + col] = s / w.factor_[ii * d + ii];
        }
    }

    w.weights_.resize(d);
    for (std::size_t i = 0; i < d; ++i) w.weights_[i] = a[i * d + i];
    return w;
}

double WeightModel::weight(std::size_t i) const {
    if (i == 0) throw std::out_of_range("WeightModel::weight: index is 1-based");
    switch (kind_) {
        case Kind::Power: return std::pow(static_cast<double>(i), 1.0 / param_);
        case Kind::Geometric: return std::exp2(std::pow(static_cast<double>(i), param_));
        default:
            if (i > d_) throw std::out_of_range("WeightModel::weight: index beyond dimension");
            return weights_[i - 1];
    }
}

double WeightModel::matrix_entry(std::size_t i, std::size_t j) const {
    if (kind_ != Kind::Matrix) throw std::logic_error("WeightModel: not a matrix model");
    return matrix_[(i - 1) * d_ + (j - 1)];
}

double WeightModel::factor_entry(std::size_t i, std::size_t j) const {
    if (kind_ != Kind::Matrix) throw std::logic_error("WeightModel: not a matrix model");
    return factor_[(i - 1) * d_ + (j - 1)];
}

double WeightModel::direction_dot(std::size_t i, const std::vector<double>& v) const {
    if (i == 0 || i > d_) throw std::out_of_range("WeightModel::direction_dot: index out of range");
    if (v.size() != d_) throw std::invalid_argument("WeightModel::direction_dot: size mismatch");
    if (kind_ != Kind::Matrix) return std::sqrt(weights_[i - 1]) * v[i - 1];
    double s = 0.0;
    for (std::size_t j = i - 1; j < d_; ++j) s += factor_[(i - 1) * d_ + j] * v[j];
    return s;
}

double WeightModel::inverse_quadratic_form(const std::vector<double>& u) const {
    if (kind_ != Kind::Matrix) {
        double s = 0.0;
        for (std::size_t i = 0; i < d_; ++i) s += u[i] * u[i] / weights_[i];
        return s;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < d_; ++j) s += u[i] * inverse_[i * d_ + j] * u[j];
    return s;
}

std::string WeightModel::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Power: os << "power(lambda=" << param_ << ",d=" << d_ << ")"; break;
        case Kind::Geometric: os << "geometric(sigma=" << param_ << ",d=" << d_ << ")"; break;
        case Kind::Explicit: os << "explicit(d=" << d_ << ")"; break;
        case Kind::Matrix: os << "matrix(d=" << d_ << ")"; break;
    }
    return os.str();
}

} // namespace torusheat
