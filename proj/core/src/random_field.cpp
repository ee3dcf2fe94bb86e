#include "torusheat/random_field.hpp"

#include <cmath>
#include <stdexcept>

#include "torusheat/rng.hpp"

namespace torusheat {

namespace {

double envelope(DecayProfile profile, double param, double mod) {
    switch (profile) {
        case DecayProfile::FlatBand: return 1.0;
        case DecayProfile::Polynomial: return std::pow(1.0 + mod, -param);
        case DecayProfile::Exponential: return std::exp(-param * mod);
    }
    return 1.0;
}

} // namespace

SpectralField random_field(const FrequencyLattice& lattice, std::uint64_t seed,
                           DecayProfile profile, double param, bool mean_zero) {
    SpectralField f(lattice);
    RngStream rng(seed, static_cast<std::uint64_t>(profile) + 11);

    std::vector<int> n;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        const std::size_t j = lattice.negate(i);
        if (j < i) continue;
        lattice.decode(i, n);
        double mod2 = 0.0;
        for (int nk : n) mod2 += static_cast<double>(nk) * nk;
        const double env = envelope(profile, param, std::sqrt(mod2));
        if (i == j) {  // n = 0
            f[i] = mean_zero ? Complex(0.0, 0.0) : Complex(env * (2.0 * rng.uniform() - 1.0), 0.0);
            continue;
        }
        const double r = rng.uniform();
        const double phase = rng.uniform(0.0, 2.0 * M_PI);
        const Complex c = std::polar(env * r, phase);
        f[i] = c;
        f[j] = std::conj(c);
    }
    return f;
}

SpectralField single_mode(const FrequencyLattice& lattice, const std::vector<int>& n) {
    SpectralField f(lattice);
    const std::size_t i = lattice.encode(n);
    f[i] = Complex(0.5, 0.0);
    f[lattice.negate(i)] += Complex(0.5, 0.0);
    return f;
}

std::vector<SpectralField> trial_dictionary(const FrequencyLattice& lattice, std::uint64_t seed,
                                            int seeds_per_profile) {
    const std::size_t d = lattice.dimension();
    std::vector<SpectralField> dict;

    // single modes: each axis at |n| = 1, 2 and neighbouring mixed modes
    for (std::size_t axis = 0; axis < d; ++axis) {
        for (int k = 1; k <= std::min(2, lattice.bandwidth(axis)); ++k) {
            std::vector<int> n(d, 0);
            n[axis] = k;
            dict.push_back(single_mode(lattice, n));
        }
        if (axis + 1 < d) {
            std::vector<int> n(d, 0);
            n[axis] = 1;
            n[axis + 1] = 1;
            dict.push_back(single_mode(lattice, n));
        }
    }

    const DecayProfile profiles[] = {DecayProfile::FlatBand, DecayProfile::Polynomial,
                                     DecayProfile::Exponential};
    const double params[] = {0.0, 1.5, 0.5};
    for (int which = 0; which < 3; ++which)
        for (int s = 0; s < seeds_per_profile; ++s)
            dict.push_back(random_field(lattice, mix_seed(seed, 100 * which + s), profiles[which],
                                        params[which], true));

    // +-1 sign patterns on the low-frequency box |n_i| <= 2 (real, even fields)
    for (int s = 0; s < seeds_per_profile; ++s) {
        RngStream rng(seed, 0x5349474eULL + s);
        SpectralField f(lattice);
        std::vector<int> n;
        for (std::size_t i = 0; i < lattice.size(); ++i) {
            const std::size_t j = lattice.negate(i);
            if (j < i) continue;
            lattice.decode(i, n);
            bool low = true;
            for (int nk : n) low = low && std::abs(nk) <= 2;
            if (!low || i == j) continue;
            const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
            f[i] = Complex(sign, 0.0);
            f[j] = Complex(sign, 0.0);
        }
        dict.push_back(f);
    }
    return dict;
}

} // namespace torusheat
