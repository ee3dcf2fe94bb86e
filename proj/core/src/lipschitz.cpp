#include "torusheat/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "torusheat/ck.hpp"
#include "torusheat/geometry.hpp"
#include "torusheat/heat.hpp"
#include "torusheat/random_field.hpp"
#include "torusheat/rng.hpp"
#include "torusheat/transform.hpp"

namespace torusheat {

namespace {

// || lambda^eta e^{-t lambda} f ||_p; equals || d^n/dt^n H_t f ||_p for
// integer eta = n since the global (-1)^n flip does not move norms.
double derivative_norm(const Spectrum& sp, const SpectralField& f, double t, double eta, double p,
                       const NormOptions& nopts) {
    if (p == 2.0) {
        double acc = 0.0;
        const std::vector<double>& lam = sp.eigenvalues();
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (lam[i] == 0.0) continue;
            const double m = std::pow(lam[i], eta) * std::exp(-t * lam[i]);
            acc += m * m * std::norm(f[i]);
        }
        return std::sqrt(acc);
    }
    const SpectralField g = sp.apply_eigen(
        f, [t, eta](double l) { return l == 0.0 ? 0.0 : std::pow(l, eta) * std::exp(-t * l); });
    return lp_norm(g, p, nopts);
}

SeminormReport lambda_impl(const Spectrum& sp, const SpectralField& f, double theta, double eta,
                           double p, const LambdaOptions& opts, const std::string& scale) {
    if (!(theta > 0.0) || !(theta <= 2.0 * eta))
        throw std::invalid_argument("lambda_seminorm: need 0 < theta <= 2 * order");
    if (p < 1.0) throw std::invalid_argument("lambda_seminorm: p >= 1 required");

    SeminormReport rep;
    rep.scale = scale;
    rep.theta = theta;
    rep.order = eta;
    rep.p = p;

    SpectralField g = f;
    g[g.lattice().zero_index()] = Complex(0.0, 0.0);
    if (g.energy() == 0.0) {
        rep.trivially_zero = true;
        return rep;
    }

    const double expo = eta - 0.5 * theta;
    auto phi = [&](double t) { return std::pow(t, expo) * derivative_norm(sp, g, t, eta, p, opts.norms); };

    auto grid_sup = [&](std::size_t points, double& arg, std::size_t& arg_k) {
        const std::vector<double> ts = log_grid(opts.t_min, opts.t_max, points);
        double best = -1.0;
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const double v = phi(ts[k]);
            if (v > best) {
                best = v;
                arg = ts[k];
                arg_k = k;
            }
        }
        return best;
    };

    double arg1 = 0.0, arg2 = 0.0;
    std::size_t k1 = 0, k2 = 0;
    const double v1 = grid_sup(opts.t_points, arg1, k1);
    const double v2 = grid_sup(2 * opts.t_points, arg2, k2);
    rep.refinement_delta = std::abs(v2 - v1) / std::max(v2, 1e-300);
    rep.boundary_attained = (k2 == 0) || (k2 + 1 == 2 * opts.t_points);

    double value = v2, arg = arg2;
    if (opts.golden_refine && !rep.boundary_attained) {
        // golden-section max on log t around the fine-grid argmax
        const double step = std::log(opts.t_max / opts.t_min) / (2.0 * opts.t_points - 1.0);
        double lo = std::log(arg2) - step, hi = std::log(arg2) + step;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
        double fc = phi(std::exp(c)), fd = phi(std::exp(d));
        for (int it = 0; it < 60; ++it) {
            if (fc < fd) {
                lo = c;
                c = d;
                fc = fd;
                d = lo + gr * (hi - lo);
                fd = phi(std::exp(d));
            } else {
                hi = d;
                d = c;
                fd = fc;
                c = hi - gr * (hi - lo);
                fc = phi(std::exp(c));
            }
        }
        const double tm = std::exp(0.5 * (lo + hi));
        const double vm = phi(tm);
        if (vm > value) {
            value = vm;
            arg = tm;
        }
    }
    rep.value = value;
    rep.argmax_t = arg;
    return rep;
}

} // namespace

SeminormReport lambda_seminorm(const Spectrum& sp, const SpectralField& f, double theta, int order,
                               double p, const LambdaOptions& opts) {
    if (order < 1) throw std::invalid_argument("lambda_seminorm: order must be >= 1");
    return lambda_impl(sp, f, theta, static_cast<double>(order), p, opts, "lambda");
}

SeminormReport lambda_seminorm_fractional(const Spectrum& sp, const SpectralField& f, double theta,
                                          double eta, double p, const LambdaOptions& opts) {
    if (!(eta > 0.0)) throw std::invalid_argument("lambda_seminorm_fractional: eta must be positive");
    return lambda_impl(sp, f, theta, eta, p, opts, "lambda_frac");
}

SeminormReport dist_seminorm(const Spectrum& sp, const SpectralField& f, double theta, int k,
                             double p, const std::vector<std::vector<double>>& y_sample,
                             const DistOptions& opts) {
    if (!(theta > 0.0) || !(theta <= static_cast<double>(k)))
        throw std::invalid_argument("dist_seminorm: need 0 < theta <= k");

    SeminormReport rep;
    rep.scale = "dist";
    rep.theta = theta;
    rep.order = k;
    rep.p = p;

    SpectralField g = f;
    g[g.lattice().zero_index()] = Complex(0.0, 0.0);
    if (g.energy() == 0.0) {
        rep.trivially_zero = true;
        return rep;
    }

    const TorusPoint e = TorusPoint::identity(sp.dimension());
    double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
    double best = -1.0;
    for (const auto& y : y_sample) {
        const double dist = intrinsic_distance(e, TorusPoint(y), sp.weights());
        if (dist <= 0.0) continue;
        dmin = std::min(dmin, dist);
        dmax = std::max(dmax, dist);
        const NormResult nr = lp_norm_detailed(difference_operator(g, y, k), p, opts.norms);
        const double ratio = nr.value / std::pow(dist, theta);
        if (ratio > best) {
            best = ratio;
            rep.argmax_y = y;
            rep.argmax_dist = dist;
            rep.estimator_error = nr.standard_error / std::pow(dist, theta);
        }
    }
    rep.value = std::max(best, 0.0);
    rep.boundary_attained = rep.argmax_dist <= 1.5 * dmin || rep.argmax_dist >= dmax / 1.5;

    if (opts.refine && !rep.argmax_y.empty()) {
        // denser magnitudes along the argmax direction
        double refined = rep.value;
        for (double s : {0.5, 0.707, 0.841, 1.189, 1.414, 2.0}) {
            std::vector<double> y = rep.argmax_y;
            for (double& c : y) c *= s;
            const double dist = intrinsic_distance(e, TorusPoint(y), sp.weights());
            if (dist <= 0.0) continue;
            const double ratio =
                lp_norm(difference_operator(g, y, k), p, opts.norms) / std::pow(dist, theta);
            refined = std::max(refined, ratio);
        }
        rep.refinement_delta = (refined - rep.value) / std::max(refined, 1e-300);
        rep.value = refined;
    }
    return rep;
}

SeminormReport dist_seminorm(const Spectrum& sp, const SpectralField& f, double theta, int k,
                             double p, const DistOptions& opts) {
    const auto ys = translation_sample(sp.dimension(), opts.sampler_seed, opts.random_pairs,
                                       opts.levels, opts.level_base);
    return dist_seminorm(sp, f, theta, k, p, ys, opts);
}

ExperimentReport herz_check(const Spectrum& sp, const std::vector<SpectralField>& family,
                            double theta, int k, double p, const DistOptions& opts) {
    ExperimentReport report;
    report.experiment = "herz_order_raising";
    report.note("theta", fmt(theta));
    report.note("k", fmt(k));
    report.note("p", p == kInfinity ? "inf" : fmt(p));

    const auto ys = translation_sample(sp.dimension(), opts.sampler_seed, opts.random_pairs,
                                       opts.levels, opts.level_base);
    DistOptions plain = opts;
    plain.refine = false;

    double worst_lower = std::numeric_limits<double>::infinity();
    double worst_upper = std::numeric_limits<double>::infinity();
    std::string wl, wu;
    const double front = std::pow(2.0, k) - std::pow(2.0, theta);
    for (std::size_t fi = 0; fi < family.size(); ++fi) {
        const double lk = dist_seminorm(sp, family[fi], theta, k, p, ys, plain).value;
        const double lk1 = dist_seminorm(sp, family[fi], theta, k + 1, p, ys, plain).value;
        const double scale = std::max({lk, lk1, 1e-300});
        const double lower = k * lk1 + 1e-6 * scale - front * lk;
        const double upper = 2.0 * lk + 1e-6 * scale - lk1;
        if (lower < worst_lower) {
            worst_lower = lower;
            wl = "field " + fmt(fi);
        }
        if (upper < worst_upper) {
            worst_upper = upper;
            wu = "field " + fmt(fi);
        }
    }
    report.require("herz_lower", worst_lower, wl);
    report.require("doubling_upper", worst_upper, wu);
    return report;
}

std::vector<SpectralField> comparison_family(const FrequencyLattice& lattice, std::uint64_t seed,
                                             std::size_t count, double theta) {
    std::vector<SpectralField> family;
    const std::size_t d = lattice.dimension();
    RngStream rng(seed, 0x66616d69ULL);

    // lacunary series per axis: sum_k 2^{-theta k} cos(2^k x + phase_k)
    for (std::size_t axis = 0; axis < d && family.size() < count; ++axis) {
        for (int variant = 0; variant < 2 && family.size() < count; ++variant) {
            SpectralField f(lattice);
            for (int k = 0; (1 << k) <= lattice.bandwidth(axis); ++k) {
                const double amp = std::pow(2.0, -theta * k);
                const double phase = variant == 0 ? 0.0 : rng.uniform(0.0, 2.0 * M_PI);
                std::vector<int> n(d, 0);
                n[axis] = 1 << k;
                const std::size_t i = lattice.encode(n);
                f[i] += 0.5 * amp * std::polar(1.0, phase);
                f[lattice.negate(i)] += 0.5 * amp * std::polar(1.0, -phase);
            }
            family.push_back(std::move(f));
        }
    }
    for (std::size_t axis = 0; axis < d && family.size() < count; ++axis) {
        std::vector<int> n(d, 0);
        n[axis] = 1;
        family.push_back(single_mode(lattice, n));
    }
    for (std::size_t s = 0; family.size() < count; ++s)
        family.push_back(random_field(lattice, mix_seed(seed, 500 + s), DecayProfile::Polynomial,
                                      1.5 + 0.5 * rng.uniform(), true));
    return family;
}

namespace {

ScaleComparison ratio_family(const std::vector<SpectralField>& family,
                             const std::function<double(const SpectralField&)>& numer,
                             const std::function<double(const SpectralField&)>& denom,
                             double ratio_cap, ExperimentReport report) {
    ScaleComparison cmp;
    cmp.report = std::move(report);
    TsvTable table;
    table.name = "scale_ratios";
    table.columns = {"field", "numerator", "denominator", "ratio"};
    std::vector<double> finite;
    for (std::size_t fi = 0; fi < family.size(); ++fi) {
        const double a = numer(family[fi]);
        const double b = denom(family[fi]);
        double r = std::numeric_limits<double>::quiet_NaN();
        if (b > 0.0) {
            r = a / b;
            finite.push_back(r);
        }
        cmp.ratios.push_back(r);
        table.add_row({fmt(fi), fmt(a), fmt(b), b > 0.0 ? fmt(r) : "trivially_consistent"});
    }
    cmp.report.tables.push_back(std::move(table));
    if (finite.empty()) {
        cmp.report.note("family", "all members trivially consistent (0/0)");
        cmp.report.require("family_bounded_ratio", 0.0);
        return cmp;
    }
    std::vector<double> sorted = finite;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double maxr = sorted.back();
    cmp.max_over_median = median > 0.0 ? maxr / median : std::numeric_limits<double>::infinity();
    cmp.report.note("max_ratio", fmt(maxr));
    cmp.report.note("median_ratio", fmt(median));
    cmp.report.note("max_over_median", fmt(cmp.max_over_median));
    cmp.report.require("family_bounded_ratio", ratio_cap - cmp.max_over_median);
    return cmp;
}

} // namespace

ScaleComparison compare_scales_forward(const Spectrum& sp, const std::vector<SpectralField>& family,
                                       double theta, double lambda_class, double p,
                                       double ratio_cap, const LambdaOptions& lopts,
                                       const DistOptions& dopts) {
    const double beta = (1.0 - lambda_class) * theta - 2.0 * lambda_class;
    if (!(beta > 0.0))
        throw std::invalid_argument("compare_scales_forward: beta = (1-lambda)theta - 2 lambda "
                                    "is not positive for the requested (theta, lambda)");
    if (!(lambda_class < theta / (theta + 2.0)))
        throw std::invalid_argument("compare_scales_forward: need lambda < theta / (theta + 2)");

    ExperimentReport report;
    report.experiment = "dist_controls_semigroup_scale";
    report.note("theta", fmt(theta));
    report.note("lambda_class", fmt(lambda_class));
    report.note("beta", fmt(beta));
    report.note("p", p == kInfinity ? "inf" : fmt(p));

    auto numer = [&](const SpectralField& f) { return lambda_seminorm(sp, f, beta, 1, p, lopts).value; };
    auto denom = [&](const SpectralField& f) { return dist_seminorm(sp, f, theta, 2, p, dopts).value; };
    ScaleComparison cmp = ratio_family(family, numer, denom, ratio_cap, std::move(report));

    if (theta > 1.0 && lambda_class < (theta - 1.0) / (theta + 4.0)) {
        const double beta2 = std::max(1.0, (1.0 - lambda_class) * theta - 4.0 * lambda_class);
        double worst = 0.0;
        for (const auto& f : family) {
            const double num = lambda_seminorm(sp, f, beta2, 2, p, lopts).value;
            const double den = dist_seminorm(sp, f, theta, 2, p, dopts).value;
            if (den > 0.0) worst = std::max(worst, num / den);
        }
        cmp.report.note("order2_beta", fmt(beta2));
        cmp.report.note("order2_max_ratio", fmt(worst));
    }
    return cmp;
}

ScaleComparison compare_scales_backward(const Spectrum& sp, const std::vector<SpectralField>& family,
                                        double theta, double p, double lambda_class,
                                        double ratio_cap, const LambdaOptions& lopts,
                                        const DistOptions& dopts) {
    if (!(theta > 0.0) || !(theta < 1.0))
        throw std::invalid_argument("compare_scales_backward: need 0 < theta < 1");
    const bool endpoint = (p == 1.0) || (p == kInfinity);
    if (endpoint && !(lambda_class > 0.0))
        throw std::invalid_argument("compare_scales_backward: p in {1, inf} needs a CK-lambda class");

    const double beta = endpoint ? theta / (1.0 + 3.0 * lambda_class) : theta;
    ExperimentReport report;
    report.experiment = "semigroup_controls_dist_scale";
    report.note("theta", fmt(theta));
    report.note("beta", fmt(beta));
    report.note("p", p == kInfinity ? "inf" : fmt(p));
    if (endpoint) report.note("lambda_class", fmt(lambda_class));

    auto numer = [&](const SpectralField& f) { return dist_seminorm(sp, f, beta, 1, p, dopts).value; };
    auto denom = [&](const SpectralField& f) { return lambda_seminorm(sp, f, theta, 1, p, lopts).value; };
    return ratio_family(family, numer, denom, ratio_cap, std::move(report));
}

} // namespace torusheat
