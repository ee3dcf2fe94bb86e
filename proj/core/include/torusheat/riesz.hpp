#ifndef TORUSHEAT_RIESZ_HPP
#define TORUSHEAT_RIESZ_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "torusheat/multiplier.hpp"
#include "torusheat/norms.hpp"
#include "torusheat/report.hpp"

namespace torusheat {

/// First-order Riesz transform in direction i: multiplier i (tau_i.n) /
/// sqrt(lambda(n)) on n != 0, zero at n = 0 (the implicit restriction to
/// mean-zero arguments). Maps real fields to real mean-zero fields.
SpectralField riesz_first(const Spectrum& sp, const SpectralField& f, std::size_t i);

/// Second-order transform R_i R_j: multiplier -(tau_i.n)(tau_j.n)/lambda(n).
SpectralField riesz_second(const Spectrum& sp, const SpectralField& f, std::size_t i, std::size_t j);

/// L^p norm of the vector transform (sum_{i=m..n_hi} |R_i f|^2)^{1/2};
/// m = 1, n_hi = d is the full transform.
NormResult riesz_tail_norm(const Spectrum& sp, const SpectralField& f, std::size_t m,
                           std::size_t n_hi, double p, const NormOptions& opts = {});
double riesz_vector_norm(const Spectrum& sp, const SpectralField& f, double p,
                         const NormOptions& opts = {});

/// Which operator a ratio experiment drives.
struct RieszOp {
    enum class Kind { First, Second, Vector } kind = Kind::First;
    std::size_t i = 1;
    std::size_t j = 1;

    static RieszOp first(std::size_t i) { return {Kind::First, i, 0}; }
    static RieszOp second(std::size_t i, std::size_t j) { return {Kind::Second, i, j}; }
    static RieszOp vector() { return {Kind::Vector, 0, 0}; }
    std::string name() const;
};

struct RatioEstimate {
    ExperimentReport report;
    double best_ratio = 0.0;
    std::size_t argmax_index = 0;  // dictionary index of the maximizer
};

/// max_f ||op f||_p / ||f||_p over the trial dictionary; asserted against the
/// dimension-free bound 2 (p* - 1) + 1e-6. Lower-bound evidence only: no
/// claim that the dictionary attains the operator norm.
RatioEstimate estimate_operator_ratio(const Spectrum& sp, const RieszOp& op, double p,
                                      const std::vector<SpectralField>& dictionary);

} // namespace torusheat

#endif
