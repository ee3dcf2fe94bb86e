#include <benchmark/benchmark.h>

#include "torusheat/heat.hpp"
#include "torusheat/norms.hpp"
#include "torusheat/random_field.hpp"
#include "torusheat/theta.hpp"
#include "torusheat/transform.hpp"

using namespace torusheat;

namespace {

void BM_roundtrip(benchmark::State& state) {
    const int b = static_cast<int>(state.range(0));
    const FrequencyLattice lat(3, {b, b, b});
    const SpectralField f = random_field(lat, 1, DecayProfile::Polynomial, 1.0, false);
    for (auto _ : state) {
        const GridField g = transform_inverse(f);
        benchmark::DoNotOptimize(transform_forward(g));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lat.size()));
}
BENCHMARK(BM_roundtrip)->Arg(4)->Arg(8)->Arg(12);

void BM_heat_sweep(benchmark::State& state) {
    const FrequencyLattice lat(3, {8, 8, 8});
    const Spectrum sp(lat, WeightModel::explicit_list({1.0, 2.0, 4.0}));
    const SpectralField f = random_field(lat, 2, DecayProfile::Exponential, 0.5, false);
    double t = 1e-4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(heat_apply(sp, f, t));
        t *= 1.01;
        if (t > 10.0) t = 1e-4;
    }
}
BENCHMARK(BM_heat_sweep);

void BM_theta(benchmark::State& state) {
    double s = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(theta1d(0.3, s));
        s *= 1.07;
        if (s > 30.0) s = 1e-3;
    }
}
BENCHMARK(BM_theta);

void BM_kernel_at_identity(benchmark::State& state) {
    const WeightModel w = WeightModel::power(0.5, 4);
    double t = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_at_identity(t, w));
        t *= 1.2;
        if (t > 1.0) t = 1e-6;
    }
}
BENCHMARK(BM_kernel_at_identity);

void BM_lp_norm(benchmark::State& state) {
    const FrequencyLattice lat(3, {8, 8, 8});
    const SpectralField f = random_field(lat, 3, DecayProfile::Polynomial, 1.2, true);
    const double p = state.range(0) == 0 ? kInfinity : static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lp_norm(f, p));
}
BENCHMARK(BM_lp_norm)->Arg(1)->Arg(2)->Arg(4)->Arg(0);

} // namespace

BENCHMARK_MAIN();
