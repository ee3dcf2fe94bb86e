#include "doctest.h"

#include <cmath>

#include "torusheat/multiplier.hpp"
#include "torusheat/random_field.hpp"
#include "torusheat/stochastic.hpp"

using namespace torusheat;

namespace {

Spectrum circle() {
    return Spectrum(FrequencyLattice(1, {4}), WeightModel::explicit_list({1.0}));
}

SpectralField sine(const FrequencyLattice& lat, const std::vector<int>& n) {
    SpectralField h(lat);
    const std::size_t i = lat.encode(n);
    h[i] = Complex(0.0, -0.5);
    h[lat.negate(i)] = Complex(0.0, 0.5);
    return h;
}

double phi(double x) { return 0.5 * (1.0 + std::erf(x / std::sqrt(2.0))); }

} // namespace

TEST_CASE("path batches are deterministic and thread-count independent") {
    const Spectrum sp = circle();
    const SpectralField f = single_mode(sp.lattice(), {1});
    const SpectralField h = sine(sp.lattice(), {1});

    PathConfig cfg;
    cfg.n_paths = 500;
    cfg.seed = 3;

    PathConfig one = cfg;
    one.threads = 1;
    PathConfig two = cfg;
    two.threads = 2;
    const PairingResult a = mc_riesz_pairing(sp, h, f, 1, one);
    const PairingResult b = mc_riesz_pairing(sp, h, f, 1, two);
    const PairingResult c = mc_riesz_pairing(sp, h, f, 1, two);
    CHECK(a.estimate == b.estimate);
    CHECK(a.se == b.se);
    CHECK(b.estimate == c.estimate);
    CHECK(a.tau_mean == b.tau_mean);
}

TEST_CASE("hitting time distribution matches the closed-form law") {
    // variance-2 background from y0: P(tau <= t) = 2(1 - Phi(y0 / sqrt(2 t)))
    PathConfig cfg;
    cfg.n_paths = 10000;
    cfg.seed = 5;
    const PathBatch batch = simulate_paths(cfg, WeightModel::explicit_list({1.0}));

    CHECK(batch.hitting_fraction() >= 0.999);
    CHECK(batch.truncated_fraction() < 1e-3);

    for (double t : {2.0, 4.5, 20.0}) {
        const double want = 2.0 * (1.0 - phi(3.0 / std::sqrt(2.0 * t)));
        std::size_t count = 0;
        for (double tau : batch.tau) count += tau <= t ? 1 : 0;
        const double got = static_cast<double>(count) / batch.tau.size();
        const double se = std::sqrt(want * (1.0 - want) / batch.tau.size());
        CHECK(std::abs(got - want) <= 3.0 * se + 2.0 * cfg.dt);
    }
    // median of the hitting law: y0^2 / (2 z^2) with z = Phi^{-1}(3/4)
    CHECK(batch.tau_median == doctest::Approx(9.891492).epsilon(0.08));
}

TEST_CASE("terminal points spread uniformly over the circle") {
    PathConfig cfg;
    cfg.n_paths = 10000;
    cfg.seed = 6;
    const PathBatch batch = simulate_paths(cfg, WeightModel::explicit_list({1.0}));
    const double expected = static_cast<double>(batch.n_hit) / 16.0;
    double chi2 = 0.0;
    for (std::size_t b : batch.terminal_bins)
        chi2 += (b - expected) * (b - expected) / expected;
    CHECK(chi2 < 30.578);  // chi^2_15 at the 1% level
}

TEST_CASE("free diffusion matches the generator normalization") {
    // coordinate variance 2 a_i t pins the no-1/2 convention
    PathConfig cfg;
    cfg.n_paths = 4000;
    cfg.seed = 7;
    const WeightModel w = WeightModel::explicit_list({1.0, 4.0});
    const DiffusionProbe probe = diffusion_probe(cfg, w, 0.5);
    CHECK(std::abs(probe.coord_variance[0] - 1.0) <= 3.0 * probe.coord_se[0]);
    CHECK(std::abs(probe.coord_variance[1] - 4.0) <= 3.0 * probe.coord_se[1]);
}

TEST_CASE("pairing estimate agrees with the finite-y0 spectral reference") {
    const Spectrum sp = circle();
    const SpectralField f = single_mode(sp.lattice(), {1});
    const SpectralField h = sine(sp.lattice(), {1});
    PathConfig cfg;
    cfg.n_paths = 5000;
    cfg.seed = 11;
    const PairingResult pr = mc_riesz_pairing(sp, h, f, 1, cfg);
    CHECK(std::abs(pr.z) <= 3.0);
    // reference = (1/4)(1 - e^{-6}), limit 1/4
    CHECK(pr.reference == doctest::Approx(0.2493803119558334).epsilon(1e-12));
    CHECK(pr.limit == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(std::abs(pr.limit - pr.reference) <= std::exp(-2.0 * cfg.y0) * pr.limit * (1.0 + 1e-12));
}

TEST_CASE("parity and cylindric zeros of the pairing") {
    const Spectrum sp = circle();
    const SpectralField f = single_mode(sp.lattice(), {1});
    PathConfig cfg;
    cfg.n_paths = 4000;
    cfg.seed = 13;
    // <cos, R_1 cos> = 0 by parity
    const PairingResult even = mc_riesz_pairing(sp, f, f, 1, cfg);
    CHECK(even.reference == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(std::abs(even.estimate) <= 3.0 * even.se + 1e-3);

    // f cylindric in x_1, direction 2: the integrand vanishes identically
    const Spectrum sp2(FrequencyLattice(2, {3, 3}), WeightModel::explicit_list({1.0, 2.0}));
    const SpectralField f2 = single_mode(sp2.lattice(), {1, 0});
    const SpectralField h2 = sine(sp2.lattice(), {0, 1});
    PathConfig cfg2;
    cfg2.n_paths = 300;
    cfg2.seed = 14;
    const PairingResult cyl = mc_riesz_pairing(sp2, h2, f2, 2, cfg2);
    CHECK(cyl.estimate == 0.0);
    CHECK(cyl.se == 0.0);
}

TEST_CASE("second-order pairing against its spectral reference") {
    const Spectrum sp = circle();
    const SpectralField f = single_mode(sp.lattice(), {1});
    PathConfig cfg;
    cfg.n_paths = 6000;
    cfg.seed = 31;
    // <cos, .> pairs with R_1 R_1 cos = -cos: the tall-start limit is +1/4
    const PairingResult pr = mc_riesz_second_pairing(sp, f, f, 1, 1, cfg);
    CHECK(pr.limit == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(pr.reference == doctest::Approx(0.25 * (1.0 - std::exp(-6.0))).epsilon(1e-12));
    CHECK(std::abs(pr.z) <= 3.0);

    // odd-even pairing vanishes
    const SpectralField h = sine(sp.lattice(), {1});
    const PairingResult odd = mc_riesz_second_pairing(sp, h, f, 1, 1, cfg);
    CHECK(odd.reference == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(std::abs(odd.estimate) <= 3.0 * odd.se + 1e-3);
}

TEST_CASE("quadratic variation: realized vs model vs Green-function value") {
    const Spectrum sp = circle();
    const SpectralField f = single_mode(sp.lattice(), {1});
    PathConfig cfg;
    cfg.n_paths = 4000;
    cfg.seed = 17;
    cfg.y0 = 2.0;
    const QvResult qv = quadratic_variation_check(sp, f, cfg);
    CHECK(qv.report.passed);
    CHECK(qv.reference == doctest::Approx(0.5 * (1.0 - std::exp(-4.0))).epsilon(1e-12));

    // constant field: the martingale is frozen
    SpectralField c(sp.lattice());
    c[sp.lattice().zero_index()] = 2.0;
    const QvResult flat = quadratic_variation_check(sp, c, cfg);
    CHECK(flat.realized_mean == 0.0);
    CHECK(flat.model_mean == 0.0);
}

TEST_CASE("discretization error of the variation estimate is first order") {
    // The realized-vs-model gap carries a dt-independent part (the variation
    // accumulated above the excursion cap, which the model integrand omits)
    // plus the Euler weak error. Differencing against the finest step cancels
    // the flat part; halving dt then halves what remains, so the two
    // differences sit in the ratio (8-2)/(4-2) = 3.
    const Spectrum sp = circle();
    const SpectralField f = single_mode(sp.lattice(), {1});
    double gap[3];
    const double dts[3] = {8e-3, 4e-3, 2e-3};
    for (int k = 0; k < 3; ++k) {
        PathConfig cfg;
        cfg.dt = dts[k];
        cfg.y0 = 1.5;
        cfg.n_paths = 60000;
        cfg.seed = 37;
        const QvResult qv = quadratic_variation_check(sp, f, cfg);
        gap[k] = qv.realized_mean - qv.model_mean;
    }
    const double d1 = gap[0] - gap[2];
    const double d2 = gap[1] - gap[2];
    CHECK(d1 > 0.0);
    CHECK(d2 > 0.0);
    CHECK(d1 / d2 >= 1.8);
    CHECK(d1 / d2 <= 5.0);
}

TEST_CASE("subordination identity at several heights") {
    const Spectrum sp = circle();
    const SpectralField f = single_mode(sp.lattice(), {1});
    PathConfig cfg;
    cfg.n_paths = 5000;
    cfg.seed = 19;

    const SubordinationResult at0 = subordination_check(sp, f, 0.0, {0.5}, cfg);
    CHECK(at0.estimate == at0.reference);
    CHECK(at0.se == 0.0);

    const SubordinationResult at1 = subordination_check(sp, f, 1.0, {0.5}, cfg);
    CHECK(at1.reference == doctest::Approx(std::exp(-1.0) * std::cos(0.5)).epsilon(1e-12));
    CHECK(at1.report.passed);

    const Spectrum sp2(FrequencyLattice(2, {3, 3}), WeightModel::explicit_list({1.0, 2.0}));
    const SpectralField f2 = random_field(sp2.lattice(), 23, DecayProfile::Exponential, 0.6, true);
    const SubordinationResult at2 = subordination_check(sp2, f2, 2.0, {0.3, 1.7}, cfg);
    CHECK(at2.report.passed);
}

TEST_CASE("standard error shrinks like one over sqrt(paths)") {
    const Spectrum sp = circle();
    const SpectralField f = single_mode(sp.lattice(), {1});
    const SpectralField h = sine(sp.lattice(), {1});
    PathConfig small;
    small.n_paths = 10000;
    small.seed = 29;
    PathConfig large = small;
    large.n_paths = 100000;
    const PairingResult a = mc_riesz_pairing(sp, h, f, 1, small);
    const PairingResult b = mc_riesz_pairing(sp, h, f, 1, large);
    const double ratio = a.se / b.se;
    CHECK(ratio >= 2.8);
    CHECK(ratio <= 3.5);
}

TEST_CASE("twenty-experiment panel stays within three standard errors") {
    const Spectrum sp = circle();
    const SpectralField f = single_mode(sp.lattice(), {1});
    const SpectralField h = sine(sp.lattice(), {1});
    int within = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        PathConfig cfg;
        cfg.n_paths = 2000;
        cfg.seed = 100 + s;
        const PairingResult pr = mc_riesz_pairing(sp, h, f, 1, cfg);
        within += std::abs(pr.z) <= 3.0 ? 1 : 0;
    }
    CHECK(within >= 19);
}

TEST_CASE("matrix weights drive increments through the triangular factor") {
    // Cov(dx) = 2 A dt; the Green-function value of the quadratic variation
    // only holds if the simulated increments and the direction symbols use
    // the same factorization.
    const WeightModel w = WeightModel::matrix({2.0, 1.0, 1.0, 2.0}, 2);
    const Spectrum sp(FrequencyLattice(2, {3, 3}), w);
    const SpectralField f = single_mode(sp.lattice(), {1, 0});
    PathConfig cfg;
    cfg.n_paths = 3000;
    cfg.seed = 41;
    cfg.y0 = 1.5;
    const QvResult qv = quadratic_variation_check(sp, f, cfg);
    CHECK(qv.report.passed);
    CHECK(qv.reference ==
          doctest::Approx(0.5 * (1.0 - std::exp(-3.0 * std::sqrt(2.0)))).epsilon(1e-12));
}

TEST_CASE("configuration preconditions") {
    const Spectrum sp = circle();
    const SpectralField f = single_mode(sp.lattice(), {1});
    const SpectralField h = sine(sp.lattice(), {1});
    PathConfig bad;
    bad.dt = 0.0;
    CHECK_THROWS_AS(simulate_paths(bad, sp.weights()), std::invalid_argument);
    PathConfig bad2;
    bad2.y0 = -1.0;
    CHECK_THROWS_AS(simulate_paths(bad2, sp.weights()), std::invalid_argument);
    PathConfig ok;
    ok.n_paths = 10;
    CHECK_THROWS_AS(mc_riesz_pairing(sp, h, f, 3, ok), std::out_of_range);
    SpectralField with_mean = f;
    with_mean[sp.lattice().zero_index()] = 1.0;
    CHECK_THROWS_AS(mc_riesz_pairing(sp, h, with_mean, 1, ok), std::invalid_argument);
}
