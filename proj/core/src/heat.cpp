#include "torusheat/heat.hpp"

#include <cmath>
#include <stdexcept>

#include "torusheat/theta.hpp"

namespace torusheat {

SpectralField heat_apply(const Spectrum& sp, const SpectralField& f, double t) {
    if (t < 0.0) throw std::invalid_argument("heat_apply: t must be nonnegative");
    if (t == 0.0) return f;
    return sp.apply_eigen(f, [t](double lam) { return std::exp(-t * lam); });
}

SpectralField heat_time_derivative(const Spectrum& sp, const SpectralField& f, double t, int order) {
    if (t <= 0.0) throw std::invalid_argument("heat_time_derivative: t must be positive");
    if (order < 1) throw std::invalid_argument("heat_time_derivative: order must be >= 1");
    return sp.apply_eigen(f, [t, order](double lam) {
        return std::pow(-lam, order) * std::exp(-t * lam);
    });
}

SpectralField poisson_apply(const Spectrum& sp, const SpectralField& f, double y) {
    if (y < 0.0) throw std::invalid_argument("poisson_apply: y must be nonnegative");
    if (y == 0.0) return f;
    return sp.apply_eigen(f, [y](double lam) { return std::exp(-y * std::sqrt(lam)); });
}

SpectralField fractional_power(const Spectrum& sp, const SpectralField& f, double s) {
    if (s < 0.0 && !f.is_mean_zero())
        throw std::invalid_argument("fractional_power: negative power needs a mean-zero field");
    return sp.apply_eigen(f, [s](double lam) { return lam == 0.0 ? 0.0 : std::pow(lam, s); });
}

namespace {

double kernel_density_matrix(const std::vector<double>& x, double t, const WeightModel& w) {
    const std::size_t d = w.dimension();
    // box large enough that e^{-t a_ii n_i^2} has dropped below the tail target
    std::vector<int> box(d);
    for (std::size_t i = 0; i < d; ++i)
        box[i] = static_cast<int>(std::ceil(std::sqrt(40.0 / (t * w.matrix_entry(i + 1, i + 1))))) + 1;

    auto boxed_sum = [&](const std::vector<int>& b) {
        std::vector<int> n(d, 0);
        for (std::size_t i = 0; i < d; ++i) n[i] = -b[i];
        double acc = 0.0;
        while (true) {
            double quad = 0.0, phase = 0.0;
            for (std::size_t i = 1; i <= d; ++i) {
                for (std::size_t j = 1; j <= d; ++j)
                    quad += w.matrix_entry(i, j) * n[i - 1] * n[j - 1];
                phase += n[i - 1] * x[i - 1];
            }
            acc += std::exp(-t * quad) * std::cos(phase);
            std::size_t axis = d;
            while (axis-- > 0) {
                if (++n[axis] <= b[axis]) break;
                n[axis] = -b[axis];
                if (axis == 0) return acc;
            }
        }
    };

    const double v1 = boxed_sum(box);
    std::vector<int> wider(box);
    for (int& b : wider) b += 2;
    const double v2 = boxed_sum(wider);
    if (std::abs(v2 - v1) > 1e-10 * std::abs(v2))
        throw std::runtime_error("kernel_density: lattice tail above 1e-10, enlarge bandwidth or t");
    return v2;
}

} // namespace

double kernel_density(const std::vector<double>& x, double t, const WeightModel& w) {
    if (!(t > 0.0)) throw std::invalid_argument("kernel_density: t must be positive");
    if (x.size() != w.dimension()) throw std::invalid_argument("kernel_density: dimension mismatch");
    if (!w.is_diagonal()) return kernel_density_matrix(x, t, w);
    double acc = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc *= theta1d(x[i], w.weights()[i] * t);
    return acc;
}

KernelValue kernel_at_identity(double t, const WeightModel& w) {
    if (!(t > 0.0)) throw std::invalid_argument("kernel_at_identity: t must be positive");
    if (!w.is_diagonal())
        throw std::invalid_argument("kernel_at_identity: diagonal weight models only");

    KernelValue out;
    double sum = 0.0;
    std::size_t i = 1;

    // Power rule: every factor with a_i t <= 1/4 is exactly log sqrt(pi/(a_i t))
    // (image corrections are below double precision there), and that block
    // sums in closed form through lgamma.
    if (w.kind() == WeightModel::Kind::Power) {
        const double lam = w.lambda_param();
        const std::size_t n0 = static_cast<std::size_t>(std::floor(std::pow(0.25 / t, lam)));
        if (n0 >= 2) {
            sum += 0.5 * static_cast<double>(n0) * std::log(M_PI / t)
                 - std::lgamma(static_cast<double>(n0) + 1.0) / (2.0 * lam);
            i = n0 + 1;
        }
    }

    const bool unbounded = w.has_generator_rule();
    const std::size_t limit = unbounded ? (std::size_t(1) << 26) : w.dimension();
    for (; i <= limit; ++i) {
        const double s = w.weight(i) * t;
        sum += log_theta0(s);
        if (2.0 * std::exp(-s) < 1e-12 * (sum + 1.0)) break;
    }
    out.effective_dimension = std::min(i, limit);
    if (!unbounded && i > limit) {
        const double s_last = w.weight(limit) * t;
        out.tail_significant = 2.0 * std::exp(-s_last) >= 1e-12 * (sum + 1.0);
    }
    out.log_value = sum;
    return out;
}

double m0(double t, const WeightModel& w) { return kernel_at_identity(t, w).log_value; }

KernelDiagnostics kernel_diagnostics(const WeightModel& w, const std::vector<double>& t_grid) {
    KernelDiagnostics diag;
    diag.t_grid = t_grid;
    for (double t : t_grid) {
        const KernelValue kv = kernel_at_identity(t, w);
        diag.log_mu.push_back(kv.log_value);
        diag.m0.push_back(kv.log_value);
        diag.effective_dimension.push_back(kv.effective_dimension);
        diag.tail_significant = diag.tail_significant || kv.tail_significant;
    }
    return diag;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2) throw std::invalid_argument("log_grid: bad range");
    std::vector<double> g(points);
    const double step = std::log(hi / lo) / static_cast<double>(points - 1);
    for (std::size_t k = 0; k < points; ++k) g[k] = lo * std::exp(step * static_cast<double>(k));
    g.back() = hi;
    return g;
}

} // namespace torusheat
