#include "doctest.h"

#include <cmath>

#include "torusheat/ck.hpp"
#include "torusheat/heat.hpp"
#include "torusheat/norms.hpp"
#include "torusheat/random_field.hpp"
#include "torusheat/riesz.hpp"
#include "torusheat/rng.hpp"
#include "torusheat/transform.hpp"

using namespace torusheat;

namespace {

Spectrum t3() {
    return Spectrum(FrequencyLattice(3, {6, 5, 4}), WeightModel::explicit_list({1.0, 2.0, 4.0}));
}

} // namespace

TEST_CASE("first-order transform on single modes") {
    const Spectrum sp = t3();
    const SpectralField f = single_mode(sp.lattice(), {1, 0, 0});
    // R_1 cos(x_1) = -sin(x_1) independent of the weight
    const SpectralField r = riesz_first(sp, f, 1);
    CHECK(std::abs(r.at({1, 0, 0}) - Complex(0.0, 0.5)) < 1e-15);
    CHECK(std::abs(r.at({-1, 0, 0}) - Complex(0.0, -0.5)) < 1e-15);
    CHECK(r.is_real());
    CHECK(r.is_mean_zero());

    const SpectralField r2 = riesz_first(sp, f, 2);
    CHECK(r2.energy() == 0.0);
    CHECK_THROWS(riesz_first(sp, f, 4));
}

TEST_CASE("vector transform is an L2 isometry on mean-zero fields") {
    const Spectrum sp = t3();
    for (std::uint64_t s = 0; s < 100; ++s) {
        const SpectralField f =
            random_field(sp.lattice(), mix_seed(41, s), DecayProfile::FlatBand, 0.0, true);
        const double v = riesz_vector_norm(sp, f, 2.0);
        CHECK(std::abs(v - std::sqrt(f.energy())) <= 1e-10 * std::sqrt(f.energy()));
    }
}

TEST_CASE("second-order transforms: values, trace identity, composition") {
    const Spectrum sp = t3();
    const SpectralField f = single_mode(sp.lattice(), {1, 0, 0});
    const SpectralField r11 = riesz_second(sp, f, 1, 1);
    CHECK(std::abs(r11.at({1, 0, 0}) - Complex(-0.5, 0.0)) < 1e-15);

    for (std::uint64_t s = 0; s < 20; ++s) {
        const SpectralField g =
            random_field(sp.lattice(), mix_seed(43, s), DecayProfile::Polynomial, 1.0, true);
        SpectralField trace(sp.lattice());
        for (std::size_t j = 1; j <= 3; ++j) trace += riesz_second(sp, g, j, j);
        trace += g;  // sum of R_j^2 = -(f - mean f)
        CHECK(std::sqrt(trace.energy()) <= 1e-10 * std::sqrt(g.energy()));

        SpectralField comp = riesz_second(sp, g, 1, 2);
        comp -= riesz_first(sp, riesz_first(sp, g, 2), 1);
        CHECK(std::sqrt(comp.energy()) <= 1e-12 * std::sqrt(g.energy()));
    }
}

TEST_CASE("tail norms: cylindric vanishing, full range, coefficient oracle") {
    const Spectrum sp = t3();
    const SpectralField cyl = single_mode(sp.lattice(), {2, 0, 0});
    CHECK(riesz_tail_norm(sp, cyl, 2, 3, 2.0).value == 0.0);

    const SpectralField f =
        random_field(sp.lattice(), 59, DecayProfile::Polynomial, 1.5, true);
    CHECK(riesz_tail_norm(sp, f, 1, 3, 2.0).value ==
          doctest::Approx(riesz_vector_norm(sp, f, 2.0)).epsilon(1e-14));

    // direct coefficient-sum oracle at p = 2
    for (std::size_t m = 1; m <= 3; ++m) {
        double oracle = 0.0;
        for (std::size_t idx = 0; idx < f.size(); ++idx) {
            const std::vector<int> n = f.lattice().decode(idx);
            const double lam = eigenvalue(n, sp.weights());
            if (lam == 0.0) continue;
            double w = 0.0;
            for (std::size_t i = m; i <= 3; ++i) {
                const double dot = std::sqrt(sp.weights().weights()[i - 1]) * n[i - 1];
                w += dot * dot;
            }
            oracle += w / lam * std::norm(f[idx]);
        }
        CHECK(riesz_tail_norm(sp, f, m, 3, 2.0).value ==
              doctest::Approx(std::sqrt(oracle)).epsilon(1e-12));
    }

    // tails shrink as the starting index grows
    double prev = riesz_tail_norm(sp, f, 1, 3, 2.0).value;
    for (std::size_t m = 2; m <= 3; ++m) {
        const double cur = riesz_tail_norm(sp, f, m, 3, 2.0).value;
        CHECK(cur <= prev + 1e-14);
        prev = cur;
    }
    CHECK_THROWS(riesz_tail_norm(sp, f, 3, 2, 2.0));
}

TEST_CASE("operator ratios against the dimension-free bound") {
    const Spectrum sp = t3();
    const auto dict = trial_dictionary(sp.lattice(), 2024, 3);

    const RatioEstimate r1 = estimate_operator_ratio(sp, RieszOp::first(1), 2.0, dict);
    CHECK(r1.report.passed);
    CHECK(r1.best_ratio <= 1.0 + 1e-12);  // components of an isometry

    const RatioEstimate r11 = estimate_operator_ratio(sp, RieszOp::second(1, 1), 2.0, dict);
    CHECK(r11.report.passed);
    CHECK(r11.best_ratio == doctest::Approx(1.0).epsilon(1e-12));

    const RatioEstimate low_p = estimate_operator_ratio(sp, RieszOp::first(1), 1.25, dict);
    CHECK(low_p.report.passed);
    CHECK(low_p.best_ratio <= 8.0);  // 2(p* - 1) = 8 at p = 1.25
}

TEST_CASE("diagonal multipliers commute with the heat flow") {
    const Spectrum sp = t3();
    const SpectralField f = random_field(sp.lattice(), 61, DecayProfile::FlatBand, 0.0, true);
    SpectralField a = riesz_first(sp, heat_apply(sp, f, 0.4), 1);
    const SpectralField b = heat_apply(sp, riesz_first(sp, f, 1), 0.4);
    // the symbols commute; the two evaluation orders agree to rounding
    a -= b;
    CHECK(std::sqrt(a.energy()) <= 1e-14 * std::sqrt(f.energy()));
}

TEST_CASE("ratio experiments on matrix weights use the factor directions") {
    const WeightModel w = WeightModel::matrix({2.0, 1.0, 1.0, 2.0}, 2);
    const Spectrum sp(FrequencyLattice(2, {5, 5}), w);
    const SpectralField f = random_field(sp.lattice(), 67, DecayProfile::Exponential, 0.5, true);
    // the vector transform stays an isometry: sum_i (tau_i.n)^2 = n^t A n
    CHECK(riesz_vector_norm(sp, f, 2.0) ==
          doctest::Approx(std::sqrt(f.energy())).epsilon(1e-12));
}
