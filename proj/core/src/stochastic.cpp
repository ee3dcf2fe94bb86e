#include "torusheat/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "torusheat/rng.hpp"

namespace torusheat {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Half-spectrum of a real field in amplitude/phase form (flat arrays for the
// per-step hot path): g(x) = c0 + sum amp cos(n.x + phase).
struct ModeSet {
    double c0 = 0.0;
    std::size_t d = 0;
    std::size_t count = 0;
    std::vector<double> amp, phase, sqrt_lambda, lambda;
    std::vector<double> nflat;   // count x d frequency components
    std::vector<double> dotflat; // count x d direction components tau_i.n

    ModeSet(const Spectrum& sp, const SpectralField& f) {
        if (!f.is_real(1e-9)) throw std::invalid_argument("ModeSet: field must be real-valued");
        if (!(f.lattice() == sp.lattice()))
            throw std::invalid_argument("ModeSet: field lattice does not match the spectrum");
        const FrequencyLattice& lat = f.lattice();
        d = lat.dimension();
        c0 = f.mean().real();
        std::vector<int> n;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const std::size_t j = lat.negate(i);
            if (j <= i) continue;  // one representative per +-n pair; skips n = 0
            const Complex c = f[i];
            if (std::abs(c) < 1e-15) continue;
            lat.decode(i, n);
            amp.push_back(2.0 * std::abs(c));
            phase.push_back(std::arg(c));
            lambda.push_back(sp.eigenvalue(i));
            sqrt_lambda.push_back(std::sqrt(sp.eigenvalue(i)));
            for (std::size_t k = 0; k < d; ++k) nflat.push_back(static_cast<double>(n[k]));
            for (std::size_t k = 1; k <= d; ++k) dotflat.push_back(sp.direction_dots(k)[i]);
            ++count;
        }
    }

    double angle(std::size_t m, const double* x) const {
        double ph = phase[m];
        for (std::size_t k = 0; k < d; ++k) ph += nflat[m * d + k] * x[k];
        return ph;
    }

    double q(double y, const double* x) const {
        double acc = c0;
        for (std::size_t m = 0; m < count; ++m)
            acc += amp[m] * std::exp(-y * sqrt_lambda[m]) * std::cos(angle(m, x));
        return acc;
    }

    double xq(std::size_t dir, double y, const double* x) const {
        double acc = 0.0;
        for (std::size_t m = 0; m < count; ++m)
            acc -= amp[m] * dotflat[m * d + dir - 1] * std::exp(-y * sqrt_lambda[m]) *
                   std::sin(angle(m, x));
        return acc;
    }

    double dyq(double y, const double* x) const {
        double acc = 0.0;
        for (std::size_t m = 0; m < count; ++m)
            acc -= amp[m] * sqrt_lambda[m] * std::exp(-y * sqrt_lambda[m]) * std::cos(angle(m, x));
        return acc;
    }
};

struct PathState {
    double y = 0.0;
    double elapsed = 0.0;
    bool hit = false;
    bool truncated = false;
    std::vector<double> x;          // wrapped coordinates
    std::vector<double> unwrapped;  // displacement without wrapping
    std::size_t steps = 0;
};

struct StepScales {
    std::vector<double> coord_sigma;  // per-axis sqrt(2 a_i dt), or factor rows
    double beta_sigma = 0.0;
    bool diagonal = true;
    std::vector<double> factor_t;     // row-major T^t for matrix increments
    std::vector<double> sqrt_a;       // sqrt(a_i) for exact excursion advances
};

StepScales make_scales(const PathConfig& cfg, const WeightModel& w) {
    const std::size_t d = w.dimension();
    StepScales s;
    s.beta_sigma = std::sqrt(2.0 * cfg.dt);
    s.diagonal = w.is_diagonal();
    s.sqrt_a.resize(d);
    for (std::size_t i = 0; i < d; ++i)
        s.sqrt_a[i] = std::sqrt(w.is_diagonal() ? w.weights()[i] : w.matrix_entry(i + 1, i + 1));
    if (s.diagonal) {
        s.coord_sigma.resize(d);
        for (std::size_t i = 0; i < d; ++i) s.coord_sigma[i] = std::sqrt(2.0 * w.weights()[i] * cfg.dt);
    } else {
        s.factor_t.assign(d * d, 0.0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                s.factor_t[i * d + j] = w.factor_entry(j + 1, i + 1);  // (T^t)_{ij}
    }
    return s;
}

inline double wrap_angle(double x) {
    x = std::fmod(x, kTwoPi);
    return x < 0.0 ? x + kTwoPi : x;
}

// wrap after a small increment (|dx| < 2 pi), avoiding fmod in the hot loop
inline double wrap_step(double x) {
    if (x >= kTwoPi) return x - kTwoPi;
    if (x < 0.0) return x + kTwoPi;
    return x;
}

// One path of the killed diffusion. on_step(y, x, d_beta_eff, xi) runs once
// per Euler step with the pre-move (left point) state; xi points at the raw
// frame normals of the step (the X_i-frame increments are sqrt(2 dt) xi_i).
// On the killing step the effective background increment is -y (driven
// exactly to zero), which removes the O(sqrt(dt)) overshoot bias of the raw
// Gaussian increment. Excursions above the cap do not call it. Draw order is
// fixed so the stream is deterministic per path.
template <typename OnStep>
PathState run_path(const PathConfig& cfg, const WeightModel& w, const StepScales& scales,
                   std::uint64_t path_index, OnStep&& on_step) {
    const std::size_t d = w.dimension();
    RngStream rng(cfg.seed, path_index);
    PathState st;
    st.x.resize(d);
    st.unwrapped.assign(d, 0.0);
    if (cfg.start_uniform) {
        for (std::size_t i = 0; i < d; ++i) st.x[i] = rng.uniform(0.0, kTwoPi);
    } else {
        if (cfg.x0.size() != d) throw std::invalid_argument("PathConfig: x0 dimension mismatch");
        for (std::size_t i = 0; i < d; ++i) st.x[i] = wrap_angle(cfg.x0[i]);
    }
    st.y = cfg.y0;
    const double cap = cfg.cap();
    std::vector<double> xi(d);

    while (true) {
        if (st.steps >= cfg.max_steps || st.elapsed >= cfg.t_max) {
            st.truncated = true;
            return st;
        }
        const double d_beta = scales.beta_sigma * rng.normal();
        for (std::size_t i = 0; i < d; ++i) xi[i] = rng.normal();

        const double y_new = st.y + d_beta;
        bool killed = y_new <= 0.0;
        if (!killed) {
            const double cross_exponent = st.y * y_new / cfg.dt;
            if (cross_exponent < 41.0 && rng.uniform() < std::exp(-cross_exponent)) killed = true;
        }

        on_step(st.y, st.x.data(), killed ? -st.y : d_beta, xi.data());

        // advance coordinates (full step also when the bridge kills mid-step;
        // the O(dt) position fuzz is inside the scheme's weak error)
        if (scales.diagonal) {
            for (std::size_t i = 0; i < d; ++i) {
                const double dx = scales.coord_sigma[i] * xi[i];
                st.unwrapped[i] += dx;
                st.x[i] = wrap_step(st.x[i] + dx);
            }
        } else {
            for (std::size_t i = 0; i < d; ++i) {
                double dx = 0.0;
                for (std::size_t j = 0; j <= i; ++j) dx += scales.factor_t[i * d + j] * xi[j];
                dx *= scales.beta_sigma;  // sqrt(2 dt) * T^t xi
                st.unwrapped[i] += dx;
                st.x[i] = wrap_angle(st.x[i] + dx);
            }
        }
        st.elapsed += cfg.dt;
        ++st.steps;

        if (killed) {
            st.y = 0.0;
            st.hit = true;
            return st;
        }
        st.y = y_new;

        if (st.y > cap) {
            // exact excursion back to the cap: duration g^2 / (2 Z^2), torus
            // advance by the exact Gaussian increment over that duration
            const double g = st.y - cap;
            double z = rng.normal();
            while (z == 0.0) z = rng.normal();
            const double sigma = 0.5 * g * g / (z * z);
            for (std::size_t i = 0; i < d; ++i) xi[i] = rng.normal();
            if (st.elapsed + sigma >= cfg.t_max) {
                st.elapsed = cfg.t_max;
                st.truncated = true;
                return st;
            }
            if (scales.diagonal) {
                for (std::size_t i = 0; i < d; ++i) {
                    const double dx = std::sqrt(2.0 * sigma) * scales.sqrt_a[i] * xi[i];
                    st.unwrapped[i] += dx;
                    st.x[i] = wrap_angle(st.x[i] + dx);
                }
            } else {
                for (std::size_t i = 0; i < d; ++i) {
                    double dx = 0.0;
                    for (std::size_t j = 0; j <= i; ++j) dx += scales.factor_t[i * d + j] * xi[j];
                    dx *= std::sqrt(2.0 * sigma);
                    st.unwrapped[i] += dx;
                    st.x[i] = wrap_angle(st.x[i] + dx);
                }
            }
            st.elapsed += sigma;
            st.y = cap;
        }
    }
}

// Runs fn(path_index) over all paths on the configured thread count; fn must
// write only to per-path slots so the result is thread-count independent.
void parallel_paths(const PathConfig& cfg, const std::function<void(std::size_t)>& fn) {
    unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, 16);
    if (threads <= 1 || cfg.n_paths < 256) {
        for (std::size_t p = 0; p < cfg.n_paths; ++p) fn(p);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (cfg.n_paths + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(cfg.n_paths, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t p = lo; p < hi; ++p) fn(p);
        });
    }
    for (auto& th : pool) th.join();
}

void validate(const PathConfig& cfg, const WeightModel& w) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("PathConfig: dt must be positive");
    if (!(cfg.y0 > 0.0)) throw std::invalid_argument("PathConfig: y0 must be positive");
    if (cfg.n_paths == 0) throw std::invalid_argument("PathConfig: n_paths must be positive");
    (void)w;
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& v) {
    MeanSe out;
    if (v.empty()) return out;
    for (double x : v) out.mean += x;
    out.mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - out.mean) * (x - out.mean);
    if (v.size() > 1) var /= static_cast<double>(v.size() - 1);
    out.se = std::sqrt(var / static_cast<double>(v.size()));
    return out;
}

} // namespace

PathBatch simulate_paths(const PathConfig& cfg, const WeightModel& w) {
    validate(cfg, w);
    const StepScales scales = make_scales(cfg, w);
    PathBatch batch;
    batch.n_paths = cfg.n_paths;
    batch.tau.assign(cfg.n_paths, 0.0);
    std::vector<std::uint8_t> hit(cfg.n_paths, 0), trunc(cfg.n_paths, 0);
    std::vector<double> terminal_x1(cfg.n_paths, 0.0);

    parallel_paths(cfg, [&](std::size_t p) {
        const PathState st = run_path(cfg, w, scales, p, [](double, const double*, double, const double*) {});
        batch.tau[p] = st.elapsed;
        hit[p] = st.hit ? 1 : 0;
        trunc[p] = st.truncated ? 1 : 0;
        terminal_x1[p] = st.x[0];
    });

    batch.terminal_bins.assign(16, 0);
    for (std::size_t p = 0; p < cfg.n_paths; ++p) {
        batch.n_hit += hit[p];
        batch.n_truncated += trunc[p];
        if (hit[p]) {
            std::size_t bin = static_cast<std::size_t>(terminal_x1[p] / kTwoPi * 16.0);
            batch.terminal_bins[std::min<std::size_t>(bin, 15)]++;
        }
    }
    const MeanSe ms = mean_se(batch.tau);
    batch.tau_mean = ms.mean;
    batch.tau_se = ms.se;
    std::vector<double> sorted = batch.tau;
    std::sort(sorted.begin(), sorted.end());
    batch.tau_median = sorted[sorted.size() / 2];
    return batch;
}

DiffusionProbe diffusion_probe(const PathConfig& cfg, const WeightModel& w, double horizon) {
    validate(cfg, w);
    if (!(horizon > 0.0)) throw std::invalid_argument("diffusion_probe: horizon must be positive");
    if (!w.is_diagonal()) throw std::invalid_argument("diffusion_probe: diagonal weights only");
    const std::size_t d = w.dimension();
    const StepScales scales = make_scales(cfg, w);
    const std::size_t steps = static_cast<std::size_t>(std::ceil(horizon / cfg.dt));

    std::vector<double> disp(cfg.n_paths * d, 0.0);
    parallel_paths(cfg, [&](std::size_t p) {
        RngStream rng(cfg.seed, p);
        std::vector<double> u(d, 0.0);
        for (std::size_t k = 0; k < steps; ++k)
            for (std::size_t i = 0; i < d; ++i) u[i] += scales.coord_sigma[i] * rng.normal();
        for (std::size_t i = 0; i < d; ++i) disp[p * d + i] = u[i];
    });

    DiffusionProbe probe;
    probe.horizon = static_cast<double>(steps) * cfg.dt;
    probe.coord_variance.resize(d);
    probe.coord_se.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> sq(cfg.n_paths);
        for (std::size_t p = 0; p < cfg.n_paths; ++p) sq[p] = disp[p * d + i] * disp[p * d + i];
        const MeanSe ms = mean_se(sq);
        probe.coord_variance[i] = ms.mean;
        probe.coord_se[i] = ms.se;
    }
    return probe;
}

PairingResult mc_riesz_pairing(const Spectrum& sp, const SpectralField& h, const SpectralField& f,
                               std::size_t i, const PathConfig& cfg) {
    validate(cfg, sp.weights());
    if (i == 0 || i > sp.dimension()) throw std::out_of_range("mc_riesz_pairing: direction index");
    if (!f.is_mean_zero(1e-12) || !h.is_mean_zero(1e-12))
        throw std::invalid_argument("mc_riesz_pairing: h and f must be mean-zero");
    const ModeSet mf(sp, f);
    const ModeSet mh(sp, h);
    const StepScales scales = make_scales(cfg, sp.weights());

    std::vector<double> contrib(cfg.n_paths, 0.0), taus(cfg.n_paths, 0.0);
    std::vector<std::uint8_t> trunc(cfg.n_paths, 0);
    parallel_paths(cfg, [&](std::size_t p) {
        double integral = 0.0;
        const PathState st = run_path(cfg, sp.weights(), scales, p,
                                      [&](double y, const double* x, double d_beta,
                                          const double*) {
                                          integral += mf.xq(i, y, x) * d_beta;
                                      });
        // hit paths: weight h(B_tau) exactly; truncated paths: the martingale
        // value Qh at the frozen state (exponentially small at large beta)
        contrib[p] = mh.q(st.y, st.x.data()) * integral;
        taus[p] = st.elapsed;
        trunc[p] = st.truncated ? 1 : 0;
    });

    PairingResult res;
    const MeanSe ms = mean_se(contrib);
    res.estimate = ms.mean;
    res.se = ms.se;
    const MeanSe mt = mean_se(taus);
    res.tau_mean = mt.mean;
    res.tau_se = mt.se;
    std::size_t n_trunc = 0;
    for (auto t : trunc) n_trunc += t;
    res.truncated_fraction = static_cast<double>(n_trunc) / static_cast<double>(cfg.n_paths);
    if (cfg.keep_paths) {
        res.path_contributions = contrib;
        res.path_tau = taus;
    }

    // finite-y0 reference: -sum_n h(-n) f(n) (i tau_i.n) (1 - e^{-2 y0 sqrt(l)}) / (2 sqrt(l))
    const FrequencyLattice& lat = f.lattice();
    Complex ref(0.0, 0.0), lim(0.0, 0.0);
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        const double lam = sp.eigenvalue(idx);
        if (lam == 0.0) continue;
        const Complex hf = h[lat.negate(idx)] * f[idx];
        const Complex sym(0.0, sp.direction_dots(i)[idx]);
        const double rl = std::sqrt(lam);
        lim += hf * sym / rl;
        ref += hf * sym * (1.0 - std::exp(-2.0 * cfg.y0 * rl)) / rl;
    }
    res.reference = -0.5 * ref.real();
    res.limit = -0.5 * lim.real();
    res.z = res.se > 0.0 ? (res.estimate - res.reference) / res.se : 0.0;

    res.report.experiment = "mc_riesz_pairing";
    res.report.note("direction", fmt(i));
    res.report.note("seed", fmt(static_cast<int>(cfg.seed)));
    res.report.note("n_paths", fmt(cfg.n_paths));
    res.report.note("dt", fmt(cfg.dt));
    res.report.note("y0", fmt(cfg.y0));
    res.report.note("estimate", fmt(res.estimate));
    res.report.note("se", fmt(res.se));
    res.report.note("reference_finite_y0", fmt(res.reference));
    res.report.note("reference_limit", fmt(res.limit));
    res.report.note("z", fmt(res.z));
    res.report.note("truncated_fraction", fmt(res.truncated_fraction));
    if (res.truncated_fraction > 1e-3)
        res.report.note("warning", "truncated-path fraction above 0.1%; error bars widened");
    res.report.require("pairing_within_3se", 3.0 - std::abs(res.z), "z=" + fmt(res.z));
    return res;
}

PairingResult mc_riesz_second_pairing(const Spectrum& sp, const SpectralField& h,
                                      const SpectralField& f, std::size_t i, std::size_t j,
                                      const PathConfig& cfg) {
    validate(cfg, sp.weights());
    if (i == 0 || i > sp.dimension() || j == 0 || j > sp.dimension())
        throw std::out_of_range("mc_riesz_second_pairing: direction index");
    if (!f.is_mean_zero(1e-12) || !h.is_mean_zero(1e-12))
        throw std::invalid_argument("mc_riesz_second_pairing: h and f must be mean-zero");
    const ModeSet mf(sp, f);
    const ModeSet mh(sp, h);
    const StepScales scales = make_scales(cfg, sp.weights());
    const double frame_sigma = std::sqrt(2.0 * cfg.dt);  // X_i-frame increment scale

    std::vector<double> contrib(cfg.n_paths, 0.0), taus(cfg.n_paths, 0.0);
    std::vector<std::uint8_t> trunc(cfg.n_paths, 0);
    parallel_paths(cfg, [&](std::size_t p) {
        double integral = 0.0;
        const PathState st = run_path(cfg, sp.weights(), scales, p,
                                      [&](double y, const double* x, double,
                                          const double* xi) {
                                          integral += mf.xq(j, y, x) * frame_sigma * xi[i - 1];
                                      });
        contrib[p] = mh.q(st.y, st.x.data()) * integral;
        taus[p] = st.elapsed;
        trunc[p] = st.truncated ? 1 : 0;
    });

    PairingResult res;
    const MeanSe ms = mean_se(contrib);
    res.estimate = ms.mean;
    res.se = ms.se;
    const MeanSe mt = mean_se(taus);
    res.tau_mean = mt.mean;
    res.tau_se = mt.se;
    std::size_t n_trunc = 0;
    for (auto t : trunc) n_trunc += t;
    res.truncated_fraction = static_cast<double>(n_trunc) / static_cast<double>(cfg.n_paths);
    if (cfg.keep_paths) {
        res.path_contributions = contrib;
        res.path_tau = taus;
    }

    // reference: sum_n h(-n) f(n) (tau_i.n)(tau_j.n) (1 - e^{-2 y0 sqrt(l)}) / (2 l)
    const FrequencyLattice& lat = f.lattice();
    Complex ref(0.0, 0.0), lim(0.0, 0.0);
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        const double lam = sp.eigenvalue(idx);
        if (lam == 0.0) continue;
        const Complex hf = h[lat.negate(idx)] * f[idx];
        const double sym = sp.direction_dots(i)[idx] * sp.direction_dots(j)[idx];
        lim += hf * sym / lam;
        ref += hf * sym * (1.0 - std::exp(-2.0 * cfg.y0 * std::sqrt(lam))) / lam;
    }
    res.reference = 0.5 * ref.real();
    res.limit = 0.5 * lim.real();
    res.z = res.se > 0.0 ? (res.estimate - res.reference) / res.se : 0.0;

    res.report.experiment = "mc_riesz_second_pairing";
    res.report.note("directions", fmt(i) + "," + fmt(j));
    res.report.note("seed", fmt(static_cast<int>(cfg.seed)));
    res.report.note("n_paths", fmt(cfg.n_paths));
    res.report.note("estimate", fmt(res.estimate));
    res.report.note("se", fmt(res.se));
    res.report.note("reference_finite_y0", fmt(res.reference));
    res.report.note("z", fmt(res.z));
    res.report.require("pairing_within_3se", 3.0 - std::abs(res.z), "z=" + fmt(res.z));
    return res;
}

QvResult quadratic_variation_check(const Spectrum& sp, const SpectralField& f,
                                   const PathConfig& cfg) {
    validate(cfg, sp.weights());
    const ModeSet mf(sp, f);
    const StepScales scales = make_scales(cfg, sp.weights());
    const std::size_t d = sp.dimension();

    // The callback sees each step's left point, which is the previous step's
    // post-move state: the visited states give the realized increments of
    // M = Qf(beta, B), and the same points carry the model integrand.
    std::vector<double> realized(cfg.n_paths, 0.0), model(cfg.n_paths, 0.0);
    parallel_paths(cfg, [&](std::size_t p) {
        double qv_model = 0.0, qv_real = 0.0, m_prev = 0.0;
        bool first = true;
        const PathState st = run_path(cfg, sp.weights(), scales, p,
                                      [&](double y, const double* x, double, const double*) {
                                          const double m = mf.q(y, x);
                                          if (!first) qv_real += (m - m_prev) * (m - m_prev);
                                          m_prev = m;
                                          first = false;
                                          double grad2 = mf.dyq(y, x) * mf.dyq(y, x);
                                          for (std::size_t k = 1; k <= d; ++k) {
                                              const double xq = mf.xq(k, y, x);
                                              grad2 += xq * xq;
                                          }
                                          qv_model += 2.0 * grad2 * cfg.dt;
                                      });
        const double m_end = mf.q(st.y, st.x.data());
        if (!first) qv_real += (m_end - m_prev) * (m_end - m_prev);
        realized[p] = qv_real;
        model[p] = qv_model;
    });

    QvResult res;
    const MeanSe mr = mean_se(realized);
    const MeanSe mm = mean_se(model);
    std::vector<double> diff(cfg.n_paths);
    for (std::size_t p = 0; p < cfg.n_paths; ++p) diff[p] = realized[p] - model[p];
    const MeanSe md = mean_se(diff);
    res.realized_mean = mr.mean;
    res.model_mean = mm.mean;
    res.diff_se = md.se;

    double ref = 0.0;
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        const double lam = sp.eigenvalue(idx);
        if (lam == 0.0) continue;
        ref += std::norm(f[idx]) * (1.0 - std::exp(-2.0 * cfg.y0 * std::sqrt(lam)));
    }
    res.reference = ref;

    res.report.experiment = "quadratic_variation";
    res.report.note("n_paths", fmt(cfg.n_paths));
    res.report.note("dt", fmt(cfg.dt));
    res.report.note("realized_mean", fmt(res.realized_mean));
    res.report.note("model_mean", fmt(res.model_mean));
    res.report.note("reference", fmt(res.reference));
    res.report.note("diff_se", fmt(res.diff_se));
    // O(dt) weak-error allowance on top of the statistical band
    const double allow = 3.0 * md.se + 20.0 * cfg.dt * std::max(1.0, res.reference);
    res.report.require("realized_matches_model", allow - std::abs(md.mean));
    const double allow_ref = 3.0 * mm.se + 20.0 * cfg.dt * std::max(1.0, res.reference);
    res.report.require("model_matches_green_reference", allow_ref - std::abs(mm.mean - ref));
    return res;
}

SubordinationResult subordination_check(const Spectrum& sp, const SpectralField& f, double y,
                                        const std::vector<double>& x0, const PathConfig& cfg) {
    validate(cfg, sp.weights());
    if (y < 0.0) throw std::invalid_argument("subordination_check: y must be nonnegative");
    if (x0.size() != sp.dimension())
        throw std::invalid_argument("subordination_check: x0 dimension mismatch");
    const ModeSet mf(sp, f);

    SubordinationResult res;
    res.reference = mf.q(y, x0.data());  // e^{-y sqrt(L)} f(x0), same mode sum

    if (y == 0.0) {
        res.estimate = res.reference;
        res.se = 0.0;
    } else {
        PathConfig sub = cfg;
        sub.y0 = y;
        const StepScales scales = make_scales(sub, sp.weights());
        std::vector<double> vals(sub.n_paths, 0.0);
        parallel_paths(sub, [&](std::size_t p) {
            const PathState st = run_path(sub, sp.weights(), scales, p,
                                          [](double, const double*, double, const double*) {});
            // H_tau f(x0) = c0 + sum amp e^{-tau lambda} cos(n.x0 + phase)
            double acc = mf.c0;
            for (std::size_t m = 0; m < mf.count; ++m)
                acc += mf.amp[m] * std::exp(-st.elapsed * mf.lambda[m]) *
                       std::cos(mf.angle(m, x0.data()));
            vals[p] = acc;
        });
        const MeanSe ms = mean_se(vals);
        res.estimate = ms.mean;
        res.se = ms.se;
    }

    res.report.experiment = "subordination";
    res.report.note("y", fmt(y));
    res.report.note("estimate", fmt(res.estimate));
    res.report.note("se", fmt(res.se));
    res.report.note("reference", fmt(res.reference));
    const double allow = 3.0 * res.se + 20.0 * cfg.dt * std::max(1.0, std::abs(res.reference)) + 1e-12;
    res.report.require("subordinated_mean_matches_poisson", allow - std::abs(res.estimate - res.reference));
    return res;
}

} // namespace torusheat
