#include "doctest.h"

#include <cmath>
#include <sstream>

#include "torusheat/field.hpp"
#include "torusheat/multiplier.hpp"
#include "torusheat/norms.hpp"
#include "torusheat/random_field.hpp"
#include "torusheat/rng.hpp"
#include "torusheat/transform.hpp"

using namespace torusheat;

namespace {

Spectrum small_spectrum() {
    return Spectrum(FrequencyLattice(3, {4, 4, 4}), WeightModel::explicit_list({1.0, 4.0, 9.0}));
}

} // namespace

TEST_CASE("eigenvalue of diagonal and matrix weights") {
    const WeightModel wd = WeightModel::explicit_list({1.0, 4.0, 9.0});
    CHECK(eigenvalue({1, -2, 1}, wd) == doctest::Approx(26.0).epsilon(1e-15));
    CHECK(eigenvalue({0, 0, 0}, wd) == 0.0);

    const WeightModel wm = WeightModel::matrix({2.0, 1.0, 1.0, 2.0}, 2);
    CHECK(eigenvalue({1, 1}, wm) == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("eigenvalues are positive away from zero") {
    const Spectrum sp = small_spectrum();
    for (std::size_t i = 0; i < sp.lattice().size(); ++i) {
        if (i == sp.lattice().zero_index())
            CHECK(sp.eigenvalue(i) == 0.0);
        else
            CHECK(sp.eigenvalue(i) > 0.0);
    }
    CHECK(sp.spectral_gap() == doctest::Approx(1.0));
}

TEST_CASE("direction symbols: diagonal cases") {
    const WeightModel w = WeightModel::explicit_list({4.0, 1.0});
    const Complex s1 = direction_symbol(1, {1, 0}, w);
    CHECK(s1.real() == 0.0);
    CHECK(s1.imag() == doctest::Approx(2.0));
    CHECK(std::abs(direction_symbol(2, {3, 0}, w)) == 0.0);
    // odd in n
    CHECK(direction_symbol(1, {-1, 0}, w) == -s1);
    CHECK_THROWS(direction_symbol(3, {0, 0}, w));
}

TEST_CASE("matrix factorization reassembles A and feeds direction symbols") {
    const std::vector<double> a = {2.0, 1.0, 1.0, 2.0};
    const WeightModel w = WeightModel::matrix(a, 2);
    // oracle: T^t T == A entrywise
    for (std::size_t i = 1; i <= 2; ++i)
        for (std::size_t j = 1; j <= 2; ++j) {
            double acc = 0.0;
            for (std::size_t k = 1; k <= 2; ++k)
                acc += w.factor_entry(k, i) * w.factor_entry(k, j);
            CHECK(acc == doctest::Approx(w.matrix_entry(i, j)).epsilon(1e-14));
        }
    // T upper triangular
    CHECK(w.factor_entry(2, 1) == 0.0);
    const Complex s = direction_symbol(1, {1, 1}, w);
    const double expected = w.factor_entry(1, 1) + w.factor_entry(1, 2);
    CHECK(s.imag() == doctest::Approx(expected).epsilon(1e-14));

    CHECK_THROWS_AS(WeightModel::matrix({1.0, 2.0, 2.0, 1.0}, 2), std::invalid_argument);
}

TEST_CASE("forward transform of cos(x1) yields +-1/2 coefficients") {
    const FrequencyLattice lat(2, {4, 4});
    const SpectralField f = single_mode(lat, {1, 0});
    const GridField g = transform_inverse(f);
    const SpectralField back = transform_forward(g);
    for (std::size_t i = 0; i < back.size(); ++i) {
        const std::vector<int> n = lat.decode(i);
        const double want = (std::abs(n[0]) == 1 && n[1] == 0) ? 0.5 : 0.0;
        CHECK(std::abs(back[i] - Complex(want, 0.0)) < 1e-12);
    }
}

TEST_CASE("constant field transforms to c_0 = 1") {
    const FrequencyLattice lat(2, {3, 3});
    GridField g(lat);
    for (auto& v : g.samples()) v = 1.0;
    const SpectralField f = transform_forward(g);
    CHECK(std::abs(f.mean() - 1.0) < 1e-14);
    CHECK(std::abs(f.energy() - 1.0) < 1e-12);
}

TEST_CASE("round-trip and Parseval over seeded fields") {
    const FrequencyLattice lat(3, {4, 5, 3});
    for (std::uint64_t s = 0; s < 100; ++s) {
        const SpectralField f = random_field(lat, mix_seed(11, s), DecayProfile::Polynomial, 1.0,
                                             s % 2 == 0);
        const GridField g = transform_inverse(f);
        SpectralField back = transform_forward(g);
        back -= f;
        CHECK(std::sqrt(back.energy()) <= 1e-10 * std::sqrt(f.energy()));

        double quad = 0.0;
        for (double v : g.samples()) quad += v * v;
        quad /= static_cast<double>(g.size());
        CHECK(std::abs(quad - f.energy()) <= 1e-10 * f.energy());
    }
}

TEST_CASE("apply_multiplier: identity, heat symbol, inverse symbol") {
    const Spectrum sp = small_spectrum();
    const SpectralField f = single_mode(sp.lattice(), {1, 0, 0});

    const SpectralField id = apply_multiplier(f, [](const std::vector<int>&) {
        return Complex(1.0, 0.0);
    });
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(id[i] == f[i]);

    // e^{-t lambda} on the single mode, t = 0.5, a_1 = 1
    const SpectralField heat = sp.apply_eigen(f, [](double l) { return std::exp(-0.5 * l); });
    CHECK(std::abs(heat.at({1, 0, 0}) - Complex(0.5 * std::exp(-0.5), 0.0)) < 1e-15);

    // 1/lambda inversion on cos(x1) + cos(x2), a = (1, 4)
    const Spectrum sp2(FrequencyLattice(2, {4, 4}), WeightModel::explicit_list({1.0, 4.0}));
    SpectralField g = single_mode(sp2.lattice(), {1, 0});
    g += single_mode(sp2.lattice(), {0, 1});
    const SpectralField inv = sp2.apply_eigen(g, [](double l) { return l == 0.0 ? 0.0 : 1.0 / l; });
    CHECK(std::abs(inv.at({1, 0}) - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(inv.at({0, 1}) - Complex(0.125, 0.0)) < 1e-15);

    CHECK_THROWS_AS(apply_multiplier(f, [](const std::vector<int>&) {
        return Complex(std::nan(""), 0.0);
    }), std::domain_error);
}

TEST_CASE("hermitian symbols preserve realness") {
    const Spectrum sp = small_spectrum();
    const SpectralField f = random_field(sp.lattice(), 5, DecayProfile::FlatBand, 0.0, false);
    REQUIRE(f.is_real());
    // heat, subordinated, fractional, first and second order Riesz symbols
    CHECK(sp.apply_eigen(f, [](double l) { return std::exp(-0.2 * l); }).is_real());
    CHECK(sp.apply_eigen(f, [](double l) { return std::exp(-std::sqrt(l)); }).is_real());
    CHECK(sp.apply_eigen(f, [](double l) { return l == 0.0 ? 0.0 : std::pow(l, 0.5); }).is_real());
}

TEST_CASE("lp_norm closed forms") {
    const FrequencyLattice lat(1, {8});
    const Spectrum sp(lat, WeightModel::explicit_list({1.0}));
    const SpectralField f = single_mode(lat, {1});

    CHECK(lp_norm(f, 2.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

    // oracle: (1/2pi) integral |cos| = 2/pi = 0.6366197723675814 (composite
    // Simpson on [0, pi/2] times 4, evaluated once and frozen)
    CHECK(lp_norm(f, 1.0) == doctest::Approx(0.6366197723675814).epsilon(1e-5));
    CHECK(lp_norm(f, kInfinity) == doctest::Approx(1.0).epsilon(1e-5));

    SpectralField c(lat);
    c[lat.zero_index()] = Complex(-2.5, 0.0);
    CHECK(lp_norm(c, 1.0) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(lp_norm(c, 3.0) == doctest::Approx(2.5).epsilon(1e-12));

    CHECK_THROWS_AS(lp_norm(f, 0.5), std::invalid_argument);

    // grid-side norms use the grid itself as the quadrature rule
    const GridField g = transform_inverse(f);
    CHECK(lp_norm(g, 2.0) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-10));
}

TEST_CASE("high-dimensional norms come with an error estimate") {
    const FrequencyLattice lat(6, {2, 2, 2, 2, 2, 2});
    const SpectralField f = random_field(lat, 3, DecayProfile::Exponential, 0.8, true);
    const NormResult r4 = lp_norm_detailed(f, 4.0);
    CHECK(r4.value > 0.0);
    CHECK(r4.standard_error > 0.0);
    CHECK(r4.standard_error < 0.05 * r4.value);
    // p = 2 stays exact through Parseval
    CHECK(lp_norm_detailed(f, 2.0).standard_error == 0.0);
    CHECK(lp_norm(f, 2.0) == doctest::Approx(std::sqrt(f.energy())).epsilon(1e-14));
}

TEST_CASE("random_field determinism, envelope, and flags") {
    const FrequencyLattice lat(2, {8, 8});
    const SpectralField a = random_field(lat, 7, DecayProfile::Polynomial, 2.0, true);
    const SpectralField b = random_field(lat, 7, DecayProfile::Polynomial, 2.0, true);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    CHECK(a.is_mean_zero());
    CHECK(a.is_real());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::vector<int> n = lat.decode(i);
        const double mod = std::sqrt(double(n[0]) * n[0] + double(n[1]) * n[1]);
        CHECK(std::abs(a[i]) <= std::pow(1.0 + mod, -2.0) + 1e-15);
    }
}

TEST_CASE("lattice budget and bandwidth rule") {
    CHECK_THROWS_AS(FrequencyLattice(3, {200, 200, 200}, 1000), std::length_error);
    const WeightModel w = WeightModel::explicit_list({1.0, 4.0, 16.0});
    const FrequencyLattice lat = FrequencyLattice::from_weights(w, 8);
    CHECK(lat.bandwidth(0) == 8);
    CHECK(lat.bandwidth(1) == 4);
    CHECK(lat.bandwidth(2) == 2);
    CHECK(lat.decode(lat.zero_index()) == std::vector<int>({0, 0, 0}));
    // negation is an involution pairing n with -n
    for (std::size_t i = 0; i < lat.size(); ++i) CHECK(lat.negate(lat.negate(i)) == i);
}

TEST_CASE("coefficient table round-trips through csv") {
    const FrequencyLattice lat(2, {3, 3});
    const SpectralField f = random_field(lat, 19, DecayProfile::FlatBand, 0.0, false);
    std::stringstream ss;
    f.write_csv(ss);
    const SpectralField g = SpectralField::read_csv(ss, lat);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(f[i] - g[i]) < 1e-15);
}
