#include "doctest.h"

#include <cmath>

#include "torusheat/geometry.hpp"
#include "torusheat/heat.hpp"
#include "torusheat/norms.hpp"
#include "torusheat/random_field.hpp"
#include "torusheat/rng.hpp"
#include "torusheat/transform.hpp"

using namespace torusheat;

namespace {

TorusPoint random_point(RngStream& rng, std::size_t d) {
    std::vector<double> x(d);
    for (auto& c : x) c = rng.uniform(0.0, 2.0 * M_PI);
    return TorusPoint(std::move(x));
}

} // namespace

TEST_CASE("intrinsic distance: diagonal closed form") {
    const WeightModel w = WeightModel::explicit_list({1.0, 4.0});
    const TorusPoint e = TorusPoint::identity(2);
    const TorusPoint y({M_PI, M_PI});
    // sqrt(pi^2 + pi^2/4) = pi sqrt(5)/2
    CHECK(intrinsic_distance(e, y, w) == doctest::Approx(3.5124073655203634).epsilon(1e-12));
    CHECK(intrinsic_distance(y, y, w) == 0.0);
    CHECK(intrinsic_distance(e, y, w) == intrinsic_distance(y, e, w));
}

TEST_CASE("intrinsic distance: matrix winding search with brute-force oracle") {
    const WeightModel w = WeightModel::matrix({2.0, 1.0, 1.0, 2.0}, 2);
    const TorusPoint e = TorusPoint::identity(2);
    const TorusPoint y({M_PI / 2.0, 0.0});
    const double d = intrinsic_distance(e, y, w);
    // m = 0 gives pi^2/6; oracle verifies minimality over |m_i| <= 2
    CHECK(d == doctest::Approx(1.282549830161864).epsilon(1e-12));
    double best = 1e300;
    for (int m1 = -2; m1 <= 2; ++m1)
        for (int m2 = -2; m2 <= 2; ++m2) {
            const std::vector<double> u = {M_PI / 2.0 - 2.0 * M_PI * m1, -2.0 * M_PI * m2};
            best = std::min(best, w.inverse_quadratic_form(u));
        }
    CHECK(d == doctest::Approx(std::sqrt(best)).epsilon(1e-12));
}

TEST_CASE("metric axioms on seeded triples") {
    const WeightModel w = WeightModel::explicit_list({1.0, 3.0, 9.0});
    RngStream rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const TorusPoint a = random_point(rng, 3), b = random_point(rng, 3),
                         c = random_point(rng, 3);
        const double ab = intrinsic_distance(a, b, w);
        const double ba = intrinsic_distance(b, a, w);
        CHECK(ab == ba);
        CHECK(ab <= intrinsic_distance(a, c, w) + intrinsic_distance(c, b, w) + 1e-12);
    }
}

TEST_CASE("distance scaling and bi-invariance") {
    const std::vector<double> base = {1.0, 2.0, 5.0};
    std::vector<double> scaled = base;
    for (double& a : scaled) a *= 9.0;
    const WeightModel w1 = WeightModel::explicit_list(base);
    const WeightModel w9 = WeightModel::explicit_list(scaled);
    RngStream rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const TorusPoint a = random_point(rng, 3), b = random_point(rng, 3),
                         z = random_point(rng, 3);
        CHECK(intrinsic_distance(a, b, w9) ==
              doctest::Approx(intrinsic_distance(a, b, w1) / 3.0).epsilon(1e-13));
        std::vector<double> as(3), bs(3);
        for (int i = 0; i < 3; ++i) {
            as[i] = a[i] + z[i];
            bs[i] = b[i] + z[i];
        }
        CHECK(intrinsic_distance(TorusPoint(as), TorusPoint(bs), w1) ==
              doctest::Approx(intrinsic_distance(a, b, w1)).epsilon(1e-12));
    }
}

TEST_CASE("difference operator: closed forms and constants") {
    const FrequencyLattice lat(2, {5, 5});
    const SpectralField f = single_mode(lat, {1, 0});
    // k = 1, y = (pi, 0): cos(x + pi) - cos(x) = -2 cos(x)
    const SpectralField d = difference_operator(f, {M_PI, 0.0}, 1);
    CHECK(std::abs(d.at({1, 0}) - Complex(-1.0, 0.0)) < 1e-14);
    CHECK(std::abs(d.at({-1, 0}) - Complex(-1.0, 0.0)) < 1e-14);

    SpectralField c(lat);
    c[lat.zero_index()] = 4.2;
    for (int k = 1; k <= 3; ++k)
        CHECK(difference_operator(c, {0.3, 1.1}, k).energy() == 0.0);
}

TEST_CASE("second difference equals two first differences") {
    const FrequencyLattice lat(2, {5, 4});
    const SpectralField f = random_field(lat, 31, DecayProfile::FlatBand, 0.0, false);
    const std::vector<double> y = {0.37, 1.91};
    SpectralField a = difference_operator(f, y, 2);
    const SpectralField b = difference_operator(difference_operator(f, y, 1), y, 1);
    a -= b;
    CHECK(std::sqrt(a.energy()) <= 1e-12 * std::sqrt(f.energy()));
}

TEST_CASE("spectral difference matches the pointwise binomial expansion") {
    const FrequencyLattice lat(2, {4, 3});
    const SpectralField f = random_field(lat, 57, DecayProfile::Polynomial, 0.8, false);
    const std::vector<double> y = {0.83, 2.4};  // off-grid shift
    const int k = 3;
    const SpectralField diff = difference_operator(f, y, k);

    RngStream rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> x = {rng.uniform(0.0, 2 * M_PI), rng.uniform(0.0, 2 * M_PI)};
        Complex oracle(0.0, 0.0);
        double binom = 1.0;  // C(k, j) built incrementally
        for (int j = 0; j <= k; ++j) {
            std::vector<double> xj = {x[0] + j * y[0], x[1] + j * y[1]};
            const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
            oracle += sign * binom * f.evaluate(xj);
            binom = binom * (k - j) / (j + 1.0);
        }
        CHECK(std::abs(diff.evaluate(x) - oracle) < 1e-12);
    }
}

TEST_CASE("translation sample is closed under doubling") {
    const auto ys = translation_sample(2, 5, 20);
    CHECK(ys.size() == 2 * 24 + 40);
    // every random vector is followed by its double
    for (std::size_t i = 48; i + 1 < ys.size(); i += 2)
        for (std::size_t k = 0; k < 2; ++k)
            CHECK(ys[i + 1][k] == doctest::Approx(2.0 * ys[i][k]).epsilon(1e-15));
}

TEST_CASE("poincare translation bound") {
    const WeightModel w = WeightModel::explicit_list({1.0, 2.0, 4.0});
    const Spectrum sp(FrequencyLattice(3, {5, 4, 3}), w);

    // single mode: 2|sin(s/2)| <= s for the sup norm
    const SpectralField f = single_mode(sp.lattice(), {1, 0, 0});
    const auto axis_ys = translation_sample(3, 2, 5);
    for (double p : {2.0, kInfinity}) {
        const ExperimentReport rep = poincare_check(sp, f, axis_ys, p);
        CHECK(rep.passed);
    }

    // constants are flat
    SpectralField c(sp.lattice());
    c[sp.lattice().zero_index()] = 3.0;
    CHECK(poincare_check(sp, c, axis_ys, 2.0).passed);

    // seeded fields and shifts
    const auto ys = translation_sample(3, 5, 10);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const SpectralField g =
            random_field(sp.lattice(), mix_seed(71, s), DecayProfile::Polynomial, 1.2, true);
        CHECK(poincare_check(sp, g, ys, 2.0).passed);
        CHECK(poincare_check(sp, g, ys, kInfinity).passed);
    }
}

TEST_CASE("gaussian bound search finds an admissible pair") {
    const WeightModel w = WeightModel::power(0.5, 2);
    GaussianBoundOptions opts;
    opts.x_samples = 60;
    opts.t_points = 24;
    const GaussianBoundFit fit = verify_gaussian_bound(w, opts);
    CHECK(fit.report.passed);
    CHECK(fit.c > 0.0);
    // at x = e the bound reduces to log mu_t(e) <= A / t^lambda
    double sup = 0.0;
    for (double t : log_grid(opts.t_min, opts.t_max, opts.t_points))
        sup = std::max(sup, std::pow(t, opts.lambda) * kernel_at_identity(t, w).log_value);
    CHECK(fit.a >= sup * (1.0 - 1e-9));
}

TEST_CASE("carre du champ of a single mode") {
    const WeightModel w = WeightModel::explicit_list({4.0});
    const Spectrum sp(FrequencyLattice(1, {4}), w);
    const SpectralField f = single_mode(sp.lattice(), {1});
    std::vector<int> dims;
    const std::vector<double> gamma = carre_du_champ_sqrt(sp, f, dims, 4);
    // |X_1 cos|^2 = 4 sin^2, so the sup of the square root is 2
    double mx = 0.0;
    for (double g : gamma) mx = std::max(mx, g);
    CHECK(mx == doctest::Approx(2.0).epsilon(1e-4));
}
