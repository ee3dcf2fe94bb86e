#ifndef TORUSHEAT_WEIGHT_MODEL_HPP
#define TORUSHEAT_WEIGHT_MODEL_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace torusheat {

/// Coefficient data of the Laplacian on the truncated torus.
///
/// Diagonal models carry a weight sequence a_i, either from a generator rule
/// (power: a_i = i^(1/lambda), geometric: a_i = 2^(i^sigma)) or an explicit
/// list. The matrix model carries a finite SPD matrix A together with its
/// upper-triangular factor T (A = T^t T); row i of T is the direction vector
/// of the i-th first-order field.
class WeightModel {
  public:
    enum class Kind { Power, Geometric, Explicit, Matrix };

    static WeightModel power(double lambda, std::size_t d);
    static WeightModel geometric(double sigma, std::size_t d);
    static WeightModel explicit_list(std::vector<double> weights);
    /// Row-major symmetric matrix, size d*d. Throws if not SPD.
    static WeightModel matrix(std::vector<double> a, std::size_t d);

    Kind kind() const { return kind_; }
    std::size_t dimension() const { return d_; }
    bool is_diagonal() const { return kind_ != Kind::Matrix; }

    /// Weight a_i for 1-based index i. For generator rules the index may
    /// exceed dimension(); explicit/matrix models are bounded by d.
    double weight(std::size_t i) const;

    /// True when weight(i) is defined for every i >= 1 (generator rules).
    bool has_generator_rule() const { return kind_ == Kind::Power || kind_ == Kind::Geometric; }

    const std::vector<double>& weights() const { return weights_; }

    /// Matrix model only: entries of A and of the upper-triangular factor T.
    double matrix_entry(std::size_t i, std::size_t j) const;
    double factor_entry(std::size_t i, std::size_t j) const;
    /// tau_i . v where tau_i is row i (1-based) of T. Diagonal models reduce
    /// to sqrt(a_i) * v_i.
    double direction_dot(std::size_t i, const std::vector<double>& v) const;

    /// Inverse of A applied as a quadratic form u^t A^{-1} u (matrix model).
    double inverse_quadratic_form(const std::vector<double>& u) const;

    double lambda_param() const { return param_; }
    double sigma_param() const { return param_; }
    std::string describe() const;

  private:
    WeightModel(Kind kind, std::size_t d, double param);

    Kind kind_;
    std::size_t d_;
    double param_ = 0.0;
    std::vector<double> weights_;       // diagonal weights a_1..a_d
    std::vector<double> matrix_;        // row-major A (matrix kind)
    std::vector<double> factor_;        // row-major upper-triangular T
    std::vector<double> inverse_;       // row-major A^{-1}
};

} // namespace torusheat

#endif
