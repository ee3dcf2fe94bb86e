#ifndef TORUSHEAT_LATTICE_HPP
#define TORUSHEAT_LATTICE_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "torusheat/weight_model.hpp"

namespace torusheat {

/// Truncated integer frequency box {n : |n_i| <= B_i} with a fixed row-major
/// iteration order. Index 0 always corresponds to n = (-B_1, ..., -B_d); the
/// zero frequency is at index of (0,...,0).
class FrequencyLattice {
  public:
    /// Default memory budget: number of lattice points allowed.
    static constexpr std::size_t kDefaultBudget = std::size_t(1) << 24;

    FrequencyLattice(std::size_t d, std::vector<int> bandwidths,
                     std::size_t budget = kDefaultBudget);

    /// Bandwidths shrink with the weights: B_i = max(2, ceil(B_1 sqrt(a_1/a_i))).
    static FrequencyLattice from_weights(const WeightModel& w, int b1,
                                         std::size_t budget = kDefaultBudget);

    std::size_t dimension() const { return d_; }
    int bandwidth(std::size_t axis) const { return bandwidths_[axis]; }
    const std::vector<int>& bandwidths() const { return bandwidths_; }

    /// Number of lattice points, prod(2 B_i + 1).
    std::size_t size() const { return size_; }
    /// Grid points per axis for the sampling grid, N_i = 2 B_i + 2.
    int grid_points(std::size_t axis) const { return 2 * bandwidths_[axis] + 2; }
    std::size_t grid_size() const;

    /// Decode flat index -> frequency vector (n_1..n_d).
    void decode(std::size_t index, std::vector<int>& n) const;
    std::vector<int> decode(std::size_t index) const;
    /// Encode frequency vector -> flat index. Throws if out of the box.
    std::size_t encode(const std::vector<int>& n) const;
    std::size_t zero_index() const { return zero_index_; }
    /// Index of -n given the index of n.
    std::size_t negate(std::size_t index) const;

    bool operator==(const FrequencyLattice& other) const {
        return bandwidths_ == other.bandwidths_;
    }

  private:
    std::size_t d_;
    std::vector<int> bandwidths_;
    std::vector<std::size_t> strides_;
    std::size_t size_;
    std::size_t zero_index_;
};

} // namespace torusheat

#endif
