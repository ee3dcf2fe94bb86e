#include "torusheat/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace torusheat {

namespace {

// One cached plan pair (+ buffer) per grid shape. FFTW planning is not
// thread-safe, and plans are bound to the buffer they were created with, so
// the cache hands out exclusive access under a lock. Transform-heavy sweeps
// in this codebase are single-threaded, so contention is not a concern.
struct PlanEntry {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    fftw_complex* buf = nullptr;
    std::size_t total = 0;
};

std::mutex g_plan_mutex;
std::map<std::vector<int>, PlanEntry>& plan_cache() {
    static std::map<std::vector<int>, PlanEntry> cache;
    return cache;
}

PlanEntry& get_plans(const std::vector<int>& dims) {
    auto& cache = plan_cache();
    auto it = cache.find(dims);
    if (it != cache.end()) return it->second;

    PlanEntry entry;
    entry.total = 1;
    for (int n : dims) entry.total *= static_cast<std::size_t>(n);
    entry.buf = fftw_alloc_complex(entry.total);
    entry.forward = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), entry.buf, entry.buf,
                                  FFTW_FORWARD, FFTW_ESTIMATE);
    entry.backward = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), entry.buf, entry.buf,
                                   FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!entry.forward || !entry.backward) throw std::runtime_error("fftw planning failed");
    return cache.emplace(dims, entry).first->second;
}

std::vector<int> grid_dims(const FrequencyLattice& lat) {
    std::vector<int> dims(lat.dimension());
    for (std::size_t axis = 0; axis < lat.dimension(); ++axis)
        dims[axis] = lat.grid_points(axis);
    return dims;
}

// Flat index of frequency n in an FFT box of shape dims, bin = n mod N.
std::size_t bin_index(const std::vector<int>& n, const std::vector<int>& dims) {
    std::size_t idx = 0;
    for (std::size_t axis = 0; axis < dims.size(); ++axis) {
        const int N = dims[axis];
        int b = n[axis] % N;
        if (b < 0) b += N;
        idx = idx * static_cast<std::size_t>(N) + static_cast<std::size_t>(b);
    }
    return idx;
}

// Round up to the next 5-smooth integer (fast FFT sizes).
int next_smooth(int n) {
    auto smooth = [](int v) {
        for (int p : {2, 3, 5})
            while (v % p == 0) v /= p;
        return v == 1;
    };
    while (!smooth(n)) ++n;
    return n;
}

} // namespace

SpectralField transform_forward(const GridField& g) {
    const FrequencyLattice& lat = g.lattice();
    const std::vector<int> dims = grid_dims(lat);

    std::lock_guard<std::mutex> lock(g_plan_mutex);
    PlanEntry& plans = get_plans(dims);
    if (plans.total != g.size()) throw std::logic_error("transform_forward: shape mismatch");
    for (std::size_t i = 0; i < plans.total; ++i) {
        plans.buf[i][0] = g[i];
        plans.buf[i][1] = 0.0;
    }
    fftw_execute(plans.forward);

    SpectralField f(lat);
    const double scale = 1.0 / static_cast<double>(plans.total);
    std::vector<int> n;
    for (std::size_t i = 0; i < f.size(); ++i) {
        lat.decode(i, n);
        const std::size_t b = bin_index(n, dims);
        f[i] = Complex(plans.buf[b][0] * scale, plans.buf[b][1] * scale);
    }
    return f;
}

GridField transform_inverse(const SpectralField& f) {
    const FrequencyLattice& lat = f.lattice();
    const std::vector<int> dims = grid_dims(lat);

    std::lock_guard<std::mutex> lock(g_plan_mutex);
    PlanEntry& plans = get_plans(dims);
    std::memset(plans.buf, 0, plans.total * sizeof(fftw_complex));
    std::vector<int> n;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Complex c = f[i];
        if (c == Complex(0.0, 0.0)) continue;
        lat.decode(i, n);
        const std::size_t b = bin_index(n, dims);
        plans.buf[b][0] += c.real();
        plans.buf[b][1] += c.imag();
    }
    fftw_execute(plans.backward);

    GridField g(lat);
    for (std::size_t i = 0; i < plans.total; ++i) g[i] = plans.buf[i][0];
    return g;
}

std::vector<double> synthesize_oversampled(const SpectralField& f, std::vector<int>& dims,
                                           int factor, std::size_t max_points) {
    const FrequencyLattice& lat = f.lattice();
    const std::size_t d = lat.dimension();
    dims.resize(d);

    // Per-axis target: factor * N_i, bumped for low d so sup norms of a
    // band-limited field are resolved to ~1e-4 relative; capped by budget.
    std::size_t total = 1;
    for (std::size_t axis = 0; axis < d; ++axis) {
        int m = factor * lat.grid_points(axis);
        if (d == 1) m = std::max(m, 1024);
        if (d == 2) m = std::max(m, 256);
        if (d == 3) m = std::max(m, 72);
        dims[axis] = next_smooth(m);
        total *= static_cast<std::size_t>(dims[axis]);
    }
    while (total > max_points) {
        total = 1;
        for (std::size_t axis = 0; axis < d; ++axis) {
            dims[axis] = next_smooth(std::max(lat.grid_points(axis), dims[axis] / 2 + 1));
            total *= static_cast<std::size_t>(dims[axis]);
        }
    }

    std::lock_guard<std::mutex> lock(g_plan_mutex);
    PlanEntry& plans = get_plans(dims);
    std::memset(plans.buf, 0, plans.total * sizeof(fftw_complex));
    std::vector<int> n;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Complex c = f[i];
        if (c == Complex(0.0, 0.0)) continue;
        lat.decode(i, n);
        const std::size_t b = bin_index(n, dims);
        plans.buf[b][0] += c.real();
        plans.buf[b][1] += c.imag();
    }
    fftw_execute(plans.backward);

    std::vector<double> samples(plans.total);
    for (std::size_t i = 0; i < plans.total; ++i) samples[i] = plans.buf[i][0];
    return samples;
}

double oversampled_max_abs(const SpectralField& f, int factor) {
    std::vector<int> dims;
    const std::vector<double> s = synthesize_oversampled(f, dims, factor);
    double m = 0.0;
    for (double v : s) m = std::max(m, std::abs(v));
    return m;
}

} // namespace torusheat
