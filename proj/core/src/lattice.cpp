#include "torusheat/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace torusheat {

FrequencyLattice::FrequencyLattice(std::size_t d, std::vector<int> bandwidths, std::size_t budget)
    : d_(d), bandwidths_(std::move(bandwidths)) {
    if (d_ == 0 || bandwidths_.size() != d_)
        throw std::invalid_argument("FrequencyLattice: bad dimension");
    for (int b : bandwidths_)
        if (b < 1) throw std::invalid_argument("FrequencyLattice: bandwidths must be >= 1");

    size_ = 1;
    for (int b : bandwidths_) {
        const std::size_t len = static_cast<std::size_t>(2 * b + 1);
        if (size_ > budget / len)
            throw std::length_error("FrequencyLattice: size exceeds memory budget");
        size_ *= len;
    }
    strides_.resize(d_);
    std::size_t s = 1;
    for (std::size_t axis = d_; axis-- > 0;) {
        strides_[axis] = s;
        s *= static_cast<std::size_t>(2 * bandwidths_[axis] + 1);
    }
    zero_index_ = 0;
    for (std::size_t axis = 0; axis < d_; ++axis)
        zero_index_ += static_cast<std::size_t>(bandwidths_[axis]) * strides_[axis];
}

FrequencyLattice FrequencyLattice::from_weights(const WeightModel& w, int b1, std::size_t budget) {
    const std::size_t d = w.dimension();
    std::vector<int> b(d);
    const double a1 = w.weight(1);
    for (std::size_t i = 1; i <= d; ++i) {
        const double bi = std::ceil(b1 * std::sqrt(a1 / w.weight(i)));
        b[i - 1] = std::max(2, static_cast<int>(bi));
    }
    b[0] = std::max(b[0], b1);
    return FrequencyLattice(d, std::move(b), budget);
}

std::size_t FrequencyLattice::grid_size() const {
    std::size_t s = 1;
    for (std::size_t axis = 0; axis < d_; ++axis) s *= static_cast<std::size_t>(grid_points(axis));
    return s;
}

void FrequencyLattice::decode(std::size_t index, std::vector<int>& n) const {
    n.resize(d_);
    for (std::size_t axis = 0; axis < d_; ++axis) {
        const std::size_t len = static_cast<std::size_t>(2 * bandwidths_[axis] + 1);
        n[axis] = static_cast<int>((index / strides_[axis]) % len) - bandwidths_[axis];
    }
}

std::vector<int> FrequencyLattice::decode(std::size_t index) const {
    std::vector<int> n;
    decode(index, n);
    return n;
}

std::size_t FrequencyLattice::encode(const std::vector<int>& n) const {
    if (n.size() != d_) throw std::invalid_argument("FrequencyLattice::encode: size mismatch");
    std::size_t index = 0;
    for (std::size_t axis = 0; axis < d_; ++axis) {
        if (n[axis] < -bandwidths_[axis] || n[axis] > bandwidths_[axis])
            throw std::out_of_range("FrequencyLattice::encode: frequency outside box");
        index += static_cast<std::size_t>(n[axis] + bandwidths_[axis]) * strides_[axis];
    }
    return index;
}

std::size_t FrequencyLattice::negate(std::size_t index) const {
    std::size_t out = 0;
    for (std::size_t axis = 0; axis < d_; ++axis) {
        const std::size_t len = static_cast<std::size_t>(2 * bandwidths_[axis] + 1);
        const std::size_t coord = (index / strides_[axis]) % len;
        out += (len - 1 - coord) * strides_[axis];
    }
    return out;
}

} // namespace torusheat
