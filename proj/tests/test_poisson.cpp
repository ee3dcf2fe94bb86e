#include "doctest.h"

#include <cmath>

#include "torusheat/ck.hpp"
#include "torusheat/norms.hpp"
#include "torusheat/poisson.hpp"
#include "torusheat/random_field.hpp"
#include "torusheat/riesz.hpp"
#include "torusheat/rng.hpp"

using namespace torusheat;

namespace {

Spectrum t6() {
    const WeightModel w = WeightModel::power(0.5, 6);
    return Spectrum(FrequencyLattice::from_weights(w, 6), w);
}

SpectralField decaying(const Spectrum& sp, std::uint64_t seed) {
    SpectralField f(sp.lattice());
    RngStream rng(seed, 0xdecafULL);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const std::size_t j = f.lattice().negate(i);
        if (j <= i) continue;
        const double amp = std::pow(1.0 + sp.eigenvalue(i), -1.5);
        const Complex c = std::polar(amp, rng.uniform(0.0, 2.0 * M_PI));
        f[i] = c;
        f[j] = std::conj(c);
    }
    return f;
}

} // namespace

TEST_CASE("poisson solve: explicit modes, zero, exact inverse") {
    const Spectrum sp(FrequencyLattice(2, {4, 4}), WeightModel::explicit_list({1.0, 4.0}));
    SpectralField f = single_mode(sp.lattice(), {1, 0});
    f += single_mode(sp.lattice(), {0, 1});
    const SpectralField u = solve_poisson(sp, f);
    CHECK(std::abs(u.at({1, 0}) - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(u.at({0, 1}) - Complex(0.125, 0.0)) < 1e-15);
    CHECK(u.is_mean_zero());

    SpectralField zero(sp.lattice());
    CHECK(solve_poisson(sp, zero).energy() == 0.0);

    const SpectralField g = random_field(sp.lattice(), 13, DecayProfile::FlatBand, 0.0, true);
    SpectralField resid = sp.apply_eigen(solve_poisson(sp, g), [](double l) { return l; });
    resid -= g;
    CHECK(std::sqrt(resid.energy()) <= 1e-12 * std::sqrt(g.energy()));

    SpectralField with_mean(sp.lattice());
    with_mean[sp.lattice().zero_index()] = 1.0;
    CHECK_THROWS_AS(solve_poisson(sp, with_mean), std::invalid_argument);
}

TEST_CASE("sobolev report: single mode, cylindric, seeded sweep") {
    const Spectrum sp2(FrequencyLattice(2, {4, 4}), WeightModel::explicit_list({1.0, 4.0}));
    const SpectralField u = single_mode(sp2.lattice(), {1, 0});
    const ExperimentReport rep = sobolev_report(sp2, u, 2.0);
    CHECK(rep.passed);
    // cylindric u: X_2 u = 0
    CHECK(lp_norm(apply_direction(sp2, u, 2), 2.0) == 0.0);
    // X_1 X_1 u has the same L2 norm as f = Lu for a_1 = 1
    CHECK(lp_norm(apply_direction_pair(sp2, u, 1, 1), 2.0) ==
          doctest::Approx(lp_norm(sp2.apply_eigen(u, [](double l) { return l; }), 2.0))
              .epsilon(1e-14));

    const WeightModel w4 = WeightModel::power(0.5, 4);
    const Spectrum sp4(FrequencyLattice::from_weights(w4, 5), w4);
    const SpectralField f = random_field(sp4.lattice(), 29, DecayProfile::Polynomial, 1.5, true);
    CHECK(sobolev_report(sp4, solve_poisson(sp4, f), 1.5).passed);
}

TEST_CASE("tail convergence on T^6 with the coefficient-sum oracle") {
    const Spectrum sp = t6();
    const SpectralField f = decaying(sp, 42);
    const SpectralField u = solve_poisson(sp, f);
    const ExperimentReport rep = tail_convergence(sp, u, 2.0, {});
    CHECK(rep.passed);

    // oracle: s_m^2 = sum_n (sum_{i>=m} a_i n_i^2 / lambda)^2 |c_n|^2
    for (std::size_t m : {std::size_t(2), std::size_t(5)}) {
        double oracle = 0.0;
        for (std::size_t idx = 0; idx < f.size(); ++idx) {
            const std::vector<int> n = f.lattice().decode(idx);
            const double lam = sp.eigenvalue(idx);
            if (lam == 0.0) continue;
            double rho = 0.0;
            for (std::size_t i = m; i <= 6; ++i)
                rho += sp.weights().weights()[i - 1] * n[i - 1] * n[i - 1];
            oracle += (rho / lam) * (rho / lam) * std::norm(f[idx]);
        }
        SpectralField tail(sp.lattice());
        for (std::size_t idx = 0; idx < u.size(); ++idx) {
            double rho = 0.0;
            for (std::size_t i = m; i <= 6; ++i) {
                const double dot = sp.direction_dots(i)[idx];
                rho += dot * dot;
            }
            tail[idx] = -rho * u[idx];
        }
        CHECK(std::sqrt(tail.energy()) == doctest::Approx(std::sqrt(oracle)).epsilon(1e-12));
    }

    // cylindric input: tails vanish from m = 2 on
    const SpectralField cyl = single_mode(sp.lattice(), {1, 0, 0, 0, 0, 0});
    const SpectralField ucyl = solve_poisson(sp, cyl);
    SpectralField t2(sp.lattice());
    for (std::size_t idx = 0; idx < ucyl.size(); ++idx) {
        double rho = 0.0;
        for (std::size_t i = 2; i <= 6; ++i) {
            const double dot = sp.direction_dots(i)[idx];
            rho += dot * dot;
        }
        t2[idx] = -rho * ucyl[idx];
    }
    CHECK(t2.energy() == 0.0);
}

TEST_CASE("tail convergence at the semigroup scale") {
    const WeightModel w = WeightModel::power(0.5, 4);
    const Spectrum sp(FrequencyLattice::from_weights(w, 5), w);
    const SpectralField f = decaying(sp, 7);
    const SpectralField u = solve_poisson(sp, f);
    TailOptions opts;
    opts.scale = TailScale::Lambda;
    opts.theta = 0.5;
    opts.order = 1;
    opts.lambda.t_points = 80;
    opts.lambda.golden_refine = false;
    CHECK(tail_convergence(sp, u, 2.0, opts).passed);
}

TEST_CASE("lipschitz regularity ladder") {
    const WeightModel w = WeightModel::power(0.5, 4);
    const Spectrum sp(FrequencyLattice::from_weights(w, 5), w);

    // single mode: the whole ladder is a closed-form multiple of one formula
    const SpectralField mode = single_mode(sp.lattice(), {1, 0, 0, 0});
    LipschitzRegularityOptions opts;
    opts.theta = 0.5;
    opts.lambda.t_points = 120;
    const ExperimentReport single = lipschitz_regularity_report(sp, mode, 2.0, opts);
    CHECK(single.passed);

    for (std::uint64_t s = 0; s < 5; ++s) {
        const ExperimentReport rep =
            lipschitz_regularity_report(sp, decaying(sp, mix_seed(55, s)), 2.0, opts);
        CHECK(rep.passed);
    }

    // endpoint path requires a CK class parameter
    CHECK_THROWS_AS(lipschitz_regularity_report(sp, mode, kInfinity, {}), std::invalid_argument);
    LipschitzRegularityOptions eopts;
    eopts.theta = 0.8;
    eopts.lambda_class = 0.1;
    eopts.lambda.t_points = 80;
    CHECK(lipschitz_regularity_report(sp, mode, kInfinity, eopts).passed);
}

TEST_CASE("gradient bounds: closed form and fit stability") {
    const WeightModel w = WeightModel::explicit_list({4.0});
    const Spectrum sp(FrequencyLattice(1, {6}), w);
    GradientBoundOptions opts;
    opts.n_fields = 8;
    opts.t_points = 16;
    const GradientBoundFit fit = gradient_bound_check(sp, opts);
    CHECK(fit.report.passed);
    CHECK(fit.k_hat > 0.0);
    CHECK(fit.k_hat < 10.0);
    CHECK(fit.c_hat > 0.0);

    // || |D H_t cos| ||_inf = sqrt(a) e^{-a t} fits under c t^{-1/2}
    for (double t : {0.1, 0.5, 1.0})
        CHECK(2.0 * std::exp(-4.0 * t) <= fit.c_hat * std::pow(t, -0.5) *
                                              std::max(std::pow(m0(t, w), 1.5), 1.0) * 1.0 + 1e-9);

    GradientBoundOptions doubled = opts;
    doubled.t_points = 32;
    const GradientBoundFit fit2 = gradient_bound_check(sp, doubled);
    CHECK(std::abs(fit2.k_hat - fit.k_hat) <= 0.1 * fit.k_hat);
}
