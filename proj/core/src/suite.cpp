#include "torusheat/suite.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "torusheat/ck.hpp"
#include "torusheat/geometry.hpp"
#include "torusheat/heat.hpp"
#include "torusheat/lipschitz.hpp"
#include "torusheat/norms.hpp"
#include "torusheat/poisson.hpp"
#include "torusheat/random_field.hpp"
#include "torusheat/riesz.hpp"
#include "torusheat/rng.hpp"
#include "torusheat/stochastic.hpp"
#include "torusheat/theta.hpp"
#include "torusheat/transform.hpp"

namespace torusheat {

namespace {

// Collects sub-assertions of one criterion; all must hold.
struct Gate {
    bool ok = true;
    std::ostringstream detail;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << "FAILED: " << what;
        }
    }
    void note(const std::string& what) {
        if (detail.tellp() > 0) detail << "; ";
        detail << what;
    }
};

Spectrum t3_spectrum() {
    const WeightModel w = WeightModel::explicit_list({1.0, 2.0, 4.0});
    return Spectrum(FrequencyLattice(3, {8, 8, 8}), w);
}

SpectralField decaying_field(const FrequencyLattice& lat, const Spectrum& sp, std::uint64_t seed,
                             double power) {
    // |c_n| = (1 + lambda(n))^{-power}, random phases, Hermitian, mean-zero
    SpectralField f(lat);
    RngStream rng(seed, 0xdecafULL);
    for (std::size_t i = 0; i < lat.size(); ++i) {
        const std::size_t j = lat.negate(i);
        if (j <= i) continue;
        const double amp = std::pow(1.0 + sp.eigenvalue(i), -power);
        const Complex c = std::polar(amp, rng.uniform(0.0, 2.0 * M_PI));
        f[i] = c;
        f[j] = std::conj(c);
    }
    return f;
}

// --- criterion bodies ---------------------------------------------------

CriterionResult c1_spectral_exactness(std::size_t n_fields) {
    Gate g;
    const auto start = std::chrono::steady_clock::now();
    const Spectrum sp = t3_spectrum();
    const FrequencyLattice& lat = sp.lattice();

    double worst_parseval = 0.0, worst_roundtrip = 0.0, worst_semigroup = 0.0;
    double worst_mass = 0.0, worst_sum_sq = 0.0, worst_isometry = 0.0;
    for (std::size_t s = 0; s < n_fields; ++s) {
        const SpectralField f =
            random_field(lat, mix_seed(1001, s), DecayProfile::Polynomial, 1.2, true);
        const double energy = f.energy();

        const GridField grid = transform_inverse(f);
        double quad = 0.0;
        for (double v : grid.samples()) quad += v * v;
        quad /= static_cast<double>(grid.size());
        worst_parseval = std::max(worst_parseval, std::abs(quad - energy) / energy);

        SpectralField back = transform_forward(grid);
        back -= f;
        worst_roundtrip = std::max(worst_roundtrip, std::sqrt(back.energy() / energy));

        SpectralField two_step = heat_apply(sp, heat_apply(sp, f, 0.3), 0.4);
        const SpectralField one_step = heat_apply(sp, f, 0.7);
        two_step -= one_step;
        worst_semigroup = std::max(worst_semigroup, lp_norm(two_step, kInfinity));

        const SpectralField nonzero_mean =
            random_field(lat, mix_seed(1002, s), DecayProfile::Exponential, 0.5, false);
        worst_mass = std::max(worst_mass, std::abs((heat_apply(sp, nonzero_mean, 0.9).mean() -
                                                    nonzero_mean.mean())
                                                       .real()));

        SpectralField sum(lat);
        for (std::size_t j = 1; j <= 3; ++j) sum += riesz_second(sp, f, j, j);
        // sum of R_j^2 plus identity should vanish on mean-zero fields
        SpectralField resid = sum;
        resid += f;
        worst_sum_sq = std::max(worst_sum_sq, std::sqrt(resid.energy() / energy));

        worst_isometry = std::max(worst_isometry,
                                  std::abs(riesz_vector_norm(sp, f, 2.0) - std::sqrt(energy)) /
                                      std::sqrt(energy));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    g.check(worst_parseval <= 1e-10, "Parseval residual " + fmt(worst_parseval));
    g.check(worst_roundtrip <= 1e-10, "round-trip residual " + fmt(worst_roundtrip));
    g.check(worst_semigroup <= 1e-10, "semigroup residual " + fmt(worst_semigroup));
    g.check(worst_mass <= 1e-10, "mass conservation residual " + fmt(worst_mass));
    g.check(worst_sum_sq <= 1e-10, "sum R_j^2 + I residual " + fmt(worst_sum_sq));
    g.check(worst_isometry <= 1e-10, "vector L2 isometry residual " + fmt(worst_isometry));
    g.check(secs <= 10.0, "runtime " + fmt(secs) + " s > 10 s");
    g.note("worst residual " + fmt(std::max({worst_parseval, worst_roundtrip, worst_semigroup,
                                             worst_mass, worst_sum_sq, worst_isometry})));
    return {1, "spectral exactness (Parseval, round-trip, semigroup, Riesz identities)", g.ok,
            g.detail.str(), secs};
}

CriterionResult c2_analyticity() {
    Gate g;
    const auto start = std::chrono::steady_clock::now();
    const Spectrum sp = t3_spectrum();
    double worst = std::numeric_limits<double>::infinity();
    for (double p : {1.25, 2.0, 4.0}) {
        AnalyticityOptions opts;
        opts.p = p;
        opts.n_fields = 100;
        opts.t_points = 240;
        const ExperimentReport rep = check_analyticity(sp, opts);
        worst = std::min(worst, rep.worst_slack());
        g.check(rep.passed, "violation at p=" + fmt(p));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    g.note("worst slack " + fmt(worst));
    return {2, "analyticity constants t^n ||L^n H_t||_p <= (p*)^n", g.ok, g.detail.str(), secs};
}

CriterionResult c3_riesz_bounds() {
    Gate g;
    const auto start = std::chrono::steady_clock::now();
    const Spectrum sp = t3_spectrum();
    const auto dict = trial_dictionary(sp.lattice(), 2024, 4);

    for (double p : {1.25, 1.5, 2.0, 3.0, 4.0}) {
        for (const RieszOp& op : {RieszOp::first(1), RieszOp::vector(), RieszOp::second(1, 2)}) {
            const RatioEstimate est = estimate_operator_ratio(sp, op, p, dict);
            g.check(est.report.passed,
                    op.name() + " at p=" + fmt(p) + ": ratio " + fmt(est.best_ratio));
        }
    }
    const RatioEstimate diag = estimate_operator_ratio(sp, RieszOp::second(1, 1), 2.0, dict);
    g.check(std::abs(diag.best_ratio - 1.0) <= 1e-10,
            "best R_1R_1 ratio at p=2 is " + fmt(diag.best_ratio) + ", want 1.0 +- 1e-10");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {3, "dimension-free Riesz bounds 2(p*-1), single-mode sharpness at p=2", g.ok,
            g.detail.str(), secs};
}

CriterionResult c4_ck_classification() {
    Gate g;
    const auto start = std::chrono::steady_clock::now();

    CkOptions opts;
    opts.lambda_grid = {0.5};
    const CkClassification quad = classify_ck(WeightModel::power(0.5, 4), opts);
    g.check(quad.per_lambda[0].stabilized,
            "sup t^0.5 log mu not stabilized (rel change " + fmt(quad.per_lambda[0].rel_change) + ")");
    g.check(std::abs(quad.fitted_exponent - 0.5) <= 0.05,
            "fitted exponent " + fmt(quad.fitted_exponent) + " outside 0.50 +- 0.05");

    // for a_i = 2^i the sup of t^lambda log mu_t(e) peaks near t = e^{-2/lambda},
    // which sits below 1e-6 for lambda = 0.1; the grid reaches past it
    CkOptions all;
    all.t_min = 1e-12;
    all.t_points = 240;
    const CkClassification geo = classify_ck(WeightModel::geometric(1.0, 4), all);
    for (const auto& pl : geo.per_lambda)
        g.check(pl.stabilized, "geometric weights not stabilized at lambda=" + fmt(pl.lambda));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    g.check(secs <= 5.0, "runtime " + fmt(secs) + " s > 5 s");
    g.note("fitted exponent " + fmt(quad.fitted_exponent));
    return {4, "CK classification: power weights at lambda=0.5, geometric CK0+", g.ok,
            g.detail.str(), secs};
}

CriterionResult c5_gaussian_bound() {
    Gate g;
    const auto start = std::chrono::steady_clock::now();
    const WeightModel w = WeightModel::power(0.5, 4);

    GaussianBoundOptions opts;
    opts.x_samples = 200;
    const GaussianBoundFit base = verify_gaussian_bound(w, opts);
    g.check(base.report.passed, "no admissible (A, C) pair at 200 samples");

    GaussianBoundOptions doubled = opts;
    doubled.x_samples = 400;
    const GaussianBoundFit two = verify_gaussian_bound(w, doubled);
    g.check(two.report.passed, "no admissible (A, C) pair at 400 samples");
    if (base.report.passed && two.report.passed) {
        g.check(std::abs(two.a - base.a) <= 0.2 * base.a,
                "fitted A moved " + fmt(base.a) + " -> " + fmt(two.a));
        g.check(std::abs(two.c - base.c) <= 0.2 * base.c,
                "fitted C moved " + fmt(base.c) + " -> " + fmt(two.c));
        g.note("A=" + fmt(base.a) + ", C=" + fmt(base.c));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {5, "Gaussian kernel bound: admissible (A, C) on T^4, stable under doubling", g.ok,
            g.detail.str(), secs};
}

CriterionResult c6_kernel_value() {
    Gate g;
    const auto start = std::chrono::steady_clock::now();
    const WeightModel w = WeightModel::explicit_list({1.0, 4.0});
    const double value = kernel_density({0.0, 0.0}, 1.0, w);

    // independent oracle: direct double sum over the character lattice
    double oracle = 0.0;
    for (int k = -12; k <= 12; ++k)
        for (int l = -12; l <= 12; ++l) oracle += std::exp(-(k * k + 4.0 * l * l));

    g.check(std::abs(value - 1.8375741) <= 1e-5,
            "mu_1(e) = " + fmt(value) + ", want 1.8375741 +- 1e-5");
    g.check(std::abs(value - oracle) <= 1e-9, "product evaluation vs direct sum: " +
                                                  fmt(std::abs(value - oracle)));

    // dual theta representations at the crossover s = pi
    for (double x : {0.0, M_PI / 2.0, M_PI}) {
        double spectral = 1.0;
        for (int k = 1; k <= 8; ++k) spectral += 2.0 * std::exp(-M_PI * k * k) * std::cos(k * x);
        double image = 0.0;
        for (int m = -8; m <= 8; ++m) {
            const double xi = x - 2.0 * M_PI * m;
            image += std::exp(-xi * xi / (4.0 * M_PI));
        }
        image *= std::sqrt(M_PI / M_PI);
        g.check(std::abs(spectral - image) <= 1e-12,
                "theta duality gap " + fmt(std::abs(spectral - image)) + " at x=" + fmt(x));
        g.check(std::abs(theta1d(x, M_PI) - spectral) <= 1e-12, "theta1d vs spectral at s=pi");
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    g.note("mu_1(e) = " + fmt(value));
    return {6, "heat-kernel value mu_1(e) on T^2 and dual theta agreement", g.ok, g.detail.str(),
            secs};
}

CriterionResult c7_differentiability() {
    Gate g;
    const auto start = std::chrono::steady_clock::now();
    const WeightModel w = WeightModel::power(0.5, 3);
    const Spectrum sp(FrequencyLattice::from_weights(w, 8), w);
    const ExperimentReport rep = check_l1_linf_differentiability(sp, {});
    for (const auto& c : rep.checks) g.check(c.passed, c.name + " slack " + fmt(c.slack));
    g.note("worst slack " + fmt(rep.worst_slack()));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {7, "L1/Linf differentiability under 2e max{M0(t/2), 2} (orders 1, 2)", g.ok,
            g.detail.str(), secs};
}

CriterionResult c8_seminorm_closed_forms() {
    Gate g;
    const auto start = std::chrono::steady_clock::now();
    const WeightModel w1 = WeightModel::explicit_list({4.0});
    const Spectrum sp1(FrequencyLattice(1, {8}), w1);
    const SpectralField cosx = single_mode(sp1.lattice(), {1});

    const SeminormReport lam = lambda_seminorm(sp1, cosx, 1.0, 1, kInfinity);
    g.check(std::abs(lam.value - 0.8577639) <= 1e-4,
            "Lambda_inf_{1,1}(cos) = " + fmt(lam.value) + ", want 0.8577639 +- 1e-4");

    const SeminormReport dist = dist_seminorm(sp1, cosx, 1.0, 1, kInfinity);
    g.check(dist.value >= 2.0 * (1.0 - 1e-3) && dist.value <= 2.0 + 1e-6,
            "L_inf_{1,1}(cos) = " + fmt(dist.value) + ", want 2(1-eps), eps <= 1e-3");
    g.check(dist.boundary_attained, "small-shift supremum not flagged boundary-attained");

    const WeightModel w2 = WeightModel::explicit_list({1.0, 2.0});
    const Spectrum sp2(FrequencyLattice(2, {8, 8}), w2);
    const auto family = comparison_family(sp2.lattice(), 88, 50, 0.5);
    const ExperimentReport herz = herz_check(sp2, family, 0.5, 1, 2.0);
    for (const auto& c : herz.checks) g.check(c.passed, c.name + " slack " + fmt(c.slack));

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    g.note("Lambda=" + fmt(lam.value) + ", L=" + fmt(dist.value));
    return {8, "seminorm closed forms and Herz order-raising on 50 seeds", g.ok, g.detail.str(),
            secs};
}

CriterionResult c9_scale_comparison() {
    Gate g;
    const auto start = std::chrono::steady_clock::now();
    const WeightModel w = WeightModel::power(0.1, 3);
    const Spectrum sp(FrequencyLattice::from_weights(w, 8), w);
    const auto family = comparison_family(sp.lattice(), 99, 50, 0.9);

    const ScaleComparison fwd = compare_scales_forward(sp, family, 0.9, 0.1, 2.0);
    g.check(fwd.report.passed, "forward max/median " + fmt(fwd.max_over_median));

    const ScaleComparison bwd = compare_scales_backward(sp, family, 0.5, 2.0);
    g.check(bwd.report.passed, "backward max/median " + fmt(bwd.max_over_median));

    // ratio stability under grid doubling
    LambdaOptions lo2;
    lo2.t_points = 480;
    DistOptions do2;
    do2.levels = 48;
    do2.level_base = std::sqrt(2.0);
    do2.random_pairs = 200;
    const ScaleComparison fwd2 = compare_scales_forward(sp, family, 0.9, 0.1, 2.0, 20.0, lo2, do2);
    double worst_change = 0.0;
    for (std::size_t i = 0; i < fwd.ratios.size(); ++i) {
        if (!std::isfinite(fwd.ratios[i]) || !std::isfinite(fwd2.ratios[i])) continue;
        worst_change = std::max(worst_change,
                                std::abs(fwd2.ratios[i] - fwd.ratios[i]) /
                                    std::max(fwd.ratios[i], 1e-12));
    }
    g.check(worst_change <= 0.10, "ratio changed " + fmt(100.0 * worst_change) + "% under doubling");
    g.note("fwd max/median " + fmt(fwd.max_over_median) + ", bwd " + fmt(bwd.max_over_median) +
           ", doubling change " + fmt(100.0 * worst_change) + "%");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {9, "two-scale comparison: family-bounded ratios, stable under grid doubling", g.ok,
            g.detail.str(), secs};
}

CriterionResult c10_poisson_regularity() {
    Gate g;
    const auto start = std::chrono::steady_clock::now();
    const WeightModel w = WeightModel::power(0.5, 6);
    const Spectrum sp(FrequencyLattice::from_weights(w, 6), w);

    const SpectralField f = decaying_field(sp.lattice(), sp, 42, 1.5);
    const SpectralField u = solve_poisson(sp, f);
    const ExperimentReport tails = tail_convergence(sp, u, 2.0, {});
    for (const auto& c : tails.checks) g.check(c.passed, c.name + " slack " + fmt(c.slack));

    // Lambda-scale Riesz seminorm inequality over 30 seeds at p=2, theta=0.5
    LambdaOptions lopts;
    lopts.t_points = 120;
    lopts.golden_refine = false;
    double worst = std::numeric_limits<double>::infinity();
    const auto pairs = sampled_pairs(sp.dimension(), 3);
    for (std::size_t s = 0; s < 30; ++s) {
        const SpectralField fs = decaying_field(sp.lattice(), sp, mix_seed(4242, s), 1.5);
        const double base = lambda_seminorm(sp, fs, 0.5, 1, 2.0, lopts).value;
        for (const auto& [i, j] : pairs) {
            const double rr = lambda_seminorm(sp, riesz_second(sp, fs, i, j), 0.5, 1, 2.0, lopts).value;
            worst = std::min(worst, 2.0 * base + 1e-8 - rr);
        }
    }
    g.check(worst >= 0.0, "Lambda-scale Riesz bound slack " + fmt(worst));
    g.note("Lambda-scale worst slack " + fmt(worst));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {10, "Poisson regularity on T^6: tail curve under 2(p*-1) bound, Lambda-scale", g.ok,
            g.detail.str(), secs};
}

CriterionResult c11_martingale(std::size_t n_paths, bool assert_tau_mean) {
    Gate g;
    const auto start = std::chrono::steady_clock::now();
    const WeightModel w = WeightModel::explicit_list({1.0});
    const Spectrum sp(FrequencyLattice(1, {4}), w);
    const SpectralField f = single_mode(sp.lattice(), {1});  // cos x
    SpectralField h(sp.lattice());                           // sin x
    {
        const std::size_t i = sp.lattice().encode({1});
        h[i] = Complex(0.0, -0.5);
        h[sp.lattice().negate(i)] = Complex(0.0, 0.5);
    }

    PathConfig cfg;
    cfg.dt = 1e-3;
    cfg.y0 = 3.0;
    cfg.n_paths = n_paths;
    cfg.seed = 11;

    const PairingResult pr = mc_riesz_pairing(sp, h, f, 1, cfg);
    g.check(std::abs(pr.z) <= 3.0, "pairing z-score " + fmt(pr.z));
    g.check(std::abs(pr.reference - 0.25) <= 0.003 * 0.25,
            "finite-y0 reference " + fmt(pr.reference) + " not within 0.3% of 1/4");
    g.check(pr.se <= 0.01, "SE " + fmt(pr.se) + " > 0.01");
    g.check(pr.truncated_fraction < 1e-3, "truncated fraction " + fmt(pr.truncated_fraction));
    if (assert_tau_mean) {
        // Stated expectation E[tau] = y0^2/2: the hitting time of a half-line
        // has a stable-1/2 tail, so the sample mean diverges with the horizon;
        // the check runs as stated and is expected to fail (see ledger).
        g.check(std::abs(pr.tau_mean - 4.5) <= 3.0 * pr.tau_se,
                "E[tau] = " + fmt(pr.tau_mean) + " +- " + fmt(pr.tau_se) +
                    " vs stated 4.5 (half-line hitting time has infinite mean)");
    }

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    g.check(secs <= 60.0, "runtime " + fmt(secs) + " s > 60 s");
    g.note("estimate " + fmt(pr.estimate) + " +- " + fmt(pr.se) + ", reference " +
           fmt(pr.reference) + ", z " + fmt(pr.z));
    return {11, "martingale-transform pairing vs spectral reference (d=1)", g.ok, g.detail.str(),
            secs};
}

CriterionResult c12_fd_oracle() {
    Gate g;
    const auto start = std::chrono::steady_clock::now();
    const Spectrum sp = t3_spectrum();
    const SpectralField f =
        random_field(sp.lattice(), 777, DecayProfile::Exponential, 0.8, false);
    const double t = 0.3;
    const SpectralField exact = heat_time_derivative(sp, f, t, 1);

    auto central_error = [&](double delta) {
        SpectralField diff = heat_apply(sp, f, t + delta);
        diff -= heat_apply(sp, f, t - delta);
        diff *= 1.0 / (2.0 * delta);
        diff -= exact;
        return std::sqrt(diff.energy());
    };
    const double e1 = central_error(1e-2);
    const double e2 = central_error(1e-3);
    const double order = std::log10(e1 / e2);
    g.check(order >= 1.9, "observed order " + fmt(order) + " < 1.9");
    g.note("observed order " + fmt(order));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {12, "time-derivative matches central differences at order >= 1.9", g.ok,
            g.detail.str(), secs};
}

SuiteResult run_suite(std::ostream& log, const std::string& name,
                      const std::vector<std::function<CriterionResult()>>& criteria) {
    SuiteResult result;
    result.suite = name;
    for (const auto& run : criteria) {
        CriterionResult cr;
        try {
            cr = run();
        } catch (const std::exception& e) {
            cr.passed = false;
            cr.detail = std::string("exception: ") + e.what();
            cr.name = "criterion threw";
        }
        result.passed = result.passed && cr.passed;
        log << "[" << (cr.index < 10 ? " " : "") << cr.index << "] "
            << (cr.passed ? "PASS" : "FAIL") << "  " << cr.name;
        if (!cr.detail.empty()) log << "  (" << cr.detail << ")";
        log << "  [" << fmt(cr.seconds) << " s]\n" << std::flush;
        result.criteria.push_back(std::move(cr));
    }
    log << (result.passed ? "ALL CRITERIA PASSED" : "SUITE HAS FAILURES") << "\n";
    return result;
}

} // namespace

SuiteResult run_acceptance_suite(std::ostream& log) {
    return run_suite(log, "acceptance",
                     {[] { return c1_spectral_exactness(100); }, c2_analyticity, c3_riesz_bounds,
                      c4_ck_classification, c5_gaussian_bound, c6_kernel_value,
                      c7_differentiability, c8_seminorm_closed_forms, c9_scale_comparison,
                      c10_poisson_regularity, [] { return c11_martingale(100000, true); },
                      c12_fd_oracle});
}

SuiteResult run_quick_suite(std::ostream& log) {
    return run_suite(log, "quick",
                     {[] { return c1_spectral_exactness(20); }, c4_ck_classification,
                      c6_kernel_value, c8_seminorm_closed_forms,
                      [] { return c11_martingale(4000, false); }, c12_fd_oracle});
}

std::string SuiteResult::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["passed"] = passed;
    j["criteria"] = nlohmann::ordered_json::array();
    for (const auto& c : criteria) {
        nlohmann::ordered_json jc;
        jc["index"] = c.index;
        jc["name"] = c.name;
        jc["passed"] = c.passed;
        jc["detail"] = c.detail;
        jc["seconds"] = c.seconds;
        j["criteria"].push_back(jc);
    }
    return j.dump(2);
}

} // namespace torusheat
