#ifndef TORUSHEAT_CK_HPP
#define TORUSHEAT_CK_HPP

#include <cstdint>
#include <vector>

#include "torusheat/heat.hpp"
#include "torusheat/report.hpp"

namespace torusheat {

struct CkOptions {
    std::vector<double> lambda_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    double t_min = 1e-6;
    double t_max = 1.0;
    std::size_t t_points = 120;
    double stabilization_tol = 0.01;  // relative sup change over the last decade
};

struct CkClassification {
    KernelDiagnostics diagnostics;
    struct PerLambda {
        double lambda = 0.0;
        double sup = 0.0;               // sup over the grid of t^lambda log mu_t(e)
        double rel_change = 0.0;        // sup contribution of the last t-decade
        bool stabilized = false;
    };
    std::vector<PerLambda> per_lambda;
    double fitted_exponent = 0.0;       // log mu_t(e) ~ t^{-lambda_hat}
    bool ck_zero_plus = false;          // stabilized for every tested lambda
    bool tail_dominated = false;        // finite list exhausted while terms still matter
    TsvTable table;                     // t, log_mu_t_e, M0, sup curves per lambda
};

/// Empirical kernel-growth diagnostics: sup-stabilization of
/// t^lambda log mu_t(e) on a finite t-grid plus a log-log growth fit. The
/// underlying properties are small-t asymptotics that no finite grid can
/// decide, so results are labelled empirical throughout.
CkClassification classify_ck(const WeightModel& w, const CkOptions& opts = {});

struct AnalyticityOptions {
    double p = 2.0;
    double t_min = 1e-4;
    double t_max = 10.0;
    std::size_t t_points = 240;
    std::size_t n_fields = 100;
    std::uint64_t seed = 7;
};

/// t^n ||L^n H_t f||_p <= (p*)^n ||f||_p + 1e-8 for n = 1, 2 over the trial
/// family. Failure carries the witness (field, t, n).
ExperimentReport check_analyticity(const Spectrum& sp, const AnalyticityOptions& opts);

struct DifferentiabilityOptions {
    double t_min = 1e-3;
    double t_max = 10.0;
    std::size_t t_points = 40;
    std::size_t n_fields = 12;
    std::uint64_t seed = 7;
};

/// For p in {1, inf}: trial-ratio lower estimates of t ||d/dt H_t||_{p->p}
/// against the ultracontractive bound 2e max{M_0(t/2), 2}, with the explicit
/// kernel-derivative integral as an upper estimate; second order against the
/// squared bound.
ExperimentReport check_l1_linf_differentiability(const Spectrum& sp,
                                                 const DifferentiabilityOptions& opts);

double pstar(double p);

} // namespace torusheat

#endif
