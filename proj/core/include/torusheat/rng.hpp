#ifndef TORUSHEAT_RNG_HPP
#define TORUSHEAT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace torusheat {

/// Mixes (seed, stream) into a well-spread 64-bit state. Used to derive
/// independent substreams (one per path, per field, ...) from a user seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(0x5851f42d4c957f2dULL + stream));
}

namespace detail {

/// Marsaglia-Tsang ziggurat tables for the standard normal (256 layers).
struct ZigguratTables {
    static constexpr int kLayers = 256;
    static constexpr double kR = 3.6541528853610088;
    double x[kLayers + 1];
    double f[kLayers + 1];

    ZigguratTables() {
        constexpr double v = 0.00492867323399;
        x[kLayers] = v / std::exp(-0.5 * kR * kR);
        x[kLayers - 1] = kR;
        for (int i = kLayers - 2; i >= 1; --i)
            x[i] = std::sqrt(-2.0 * std::log(v / x[i + 1] + std::exp(-0.5 * x[i + 1] * x[i + 1])));
        x[0] = 0.0;
        for (int i = 0; i <= kLayers; ++i) f[i] = std::exp(-0.5 * x[i] * x[i]);
    }

    static const ZigguratTables& get() {
        static const ZigguratTables tables;
        return tables;
    }
};

} // namespace detail

/// Deterministic random stream. std::mt19937_64 has a fully specified
/// sequence and the derived variates use explicit formulas, so a stream is a
/// pure function of (seed, stream id).
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}
    RngStream(std::uint64_t seed, std::uint64_t stream) : engine_(mix_seed(seed, stream)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1], safe as a log() argument.
    double uniform_pos() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via the ziggurat: one engine draw on the common path
    /// (layer index from the low bits, signed mantissa from the high bits).
    double normal() {
        const auto& z = detail::ZigguratTables::get();
        for (;;) {
            const std::uint64_t bits = engine_();
            const int layer = static_cast<int>(bits & 255);
            const double u =
                static_cast<double>(bits >> 11) * (2.0 * 0x1.0p-53) - 1.0;  // [-1, 1)
            const double x = u * z.x[layer + 1];
            if (std::abs(x) < z.x[layer]) return x;
            if (layer == detail::ZigguratTables::kLayers - 1) {
                // tail beyond R
                double xt, yt;
                do {
                    xt = -std::log(uniform_pos()) / detail::ZigguratTables::kR;
                    yt = -std::log(uniform_pos());
                } while (yt + yt < xt * xt);
                return u > 0.0 ? detail::ZigguratTables::kR + xt
                               : -(detail::ZigguratTables::kR + xt);
            }
            if (z.f[layer + 1] + uniform() * (z.f[layer] - z.f[layer + 1]) <
                std::exp(-0.5 * x * x))
                return x;
        }
    }

    int uniform_int(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

  private:
    std::mt19937_64 engine_;
};

} // namespace torusheat

#endif
