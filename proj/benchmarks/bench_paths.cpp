#include <benchmark/benchmark.h>

#include "torusheat/random_field.hpp"
#include "torusheat/rng.hpp"
#include "torusheat/stochastic.hpp"

using namespace torusheat;

namespace {

void BM_normal_draws(benchmark::State& state) {
    RngStream rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(rng.normal());
}
BENCHMARK(BM_normal_draws);

void BM_killed_paths(benchmark::State& state) {
    const Spectrum sp(FrequencyLattice(1, {4}), WeightModel::explicit_list({1.0}));
    const SpectralField f = single_mode(sp.lattice(), {1});
    SpectralField h(sp.lattice());
    const std::size_t i = sp.lattice().encode({1});
    h[i] = Complex(0.0, -0.5);
    h[sp.lattice().negate(i)] = Complex(0.0, 0.5);

    PathConfig cfg;
    cfg.n_paths = static_cast<std::size_t>(state.range(0));
    cfg.seed = 9;
    cfg.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(mc_riesz_pairing(sp, h, f, 1, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_killed_paths)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

} // namespace
