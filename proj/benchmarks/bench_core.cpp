#include <benchmark/benchmark.h>

#include "scgl/config.hpp"
#include "scgl/field.hpp"
#include "scgl/flow.hpp"
#include "scgl/integrators.hpp"
#include "scgl/noise.hpp"
#include "scgl/rng.hpp"
#include "scgl/semigroup.hpp"

namespace {

using namespace scgl;

SpectralField random_field(int N) {
  RngStream rng(1, 0);
  SpectralField f(N);
  for (Complex& c : f.coeffs) c = Complex{rng.next_normal(), rng.next_normal()};
  return f;
}

void BM_ToGrid(benchmark::State& state) {
  const SpectralField f = random_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(to_grid(f));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ToGrid)->Arg(256)->Arg(1024)->Arg(8192);

void BM_RoundTrip(benchmark::State& state) {
  const SpectralField f = random_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(to_coeffs(to_grid(f)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RoundTrip)->Arg(256)->Arg(1024)->Arg(8192);

void BM_ApplyFlow(benchmark::State& state) {
  const GridField g = to_grid(random_field(static_cast<int>(state.range(0))));
  const FlowParams p{4096.0, -3.0};
  for (auto _ : state) benchmark::DoNotOptimize(apply_flow(g, 1e-4, p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ApplyFlow)->Arg(1024)->Arg(8192);

void BM_SemigroupApply(benchmark::State& state) {
  const SpectralField f = random_field(static_cast<int>(state.range(0)));
  ModelParams params;
  params.nu = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(semigroup_apply(f, 1e-4, params));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SemigroupApply)->Arg(1024)->Arg(8192);

void BM_SampleConvIncrement(benchmark::State& state) {
  const NoiseSpec spec;
  RngStream rng(7, 0);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_conv_increment(rng, N, 1e-4, spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleConvIncrement)->Arg(1024)->Arg(8192);

void BM_CoupleDown(benchmark::State& state) {
  const NoiseSpec spec;
  ModelParams params;
  params.nu = 1.0;
  RngStream rng(7, 1);
  const int N = static_cast<int>(state.range(0));
  std::vector<ConvIncrement> fine(4);
  for (auto& inc : fine) inc = sample_conv_increment(rng, N, 2.5e-5, spec);
  for (auto _ : state)
    benchmark::DoNotOptimize(couple_down(std::span<const ConvIncrement>(fine), params));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CoupleDown)->Arg(1024)->Arg(8192);

void BM_EsmStep(benchmark::State& state) {
  RunConfig cfg;
  cfg.model = ModelParams{4096.0, 1.0, 1.0, 64.0, 0.000244140625};
  cfg.N = static_cast<int>(state.range(0));
  cfg.dt = 1.0 / (static_cast<double>(cfg.N) * cfg.N);
  RngStream rng(7, 2);
  const ConvIncrement inc = sample_conv_increment(rng, cfg.N, cfg.dt, cfg.noise);
  SolverState st{random_field(cfg.N), 0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(esm_step(st, inc, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EsmStep)->Arg(256)->Arg(1024)->Arg(8192);

void BM_TamStep(benchmark::State& state) {
  RunConfig cfg;
  cfg.model = ModelParams{4096.0, 1.0, 1.0, 64.0, 0.000244140625};
  cfg.N = static_cast<int>(state.range(0));
  cfg.dt = 1.0 / (static_cast<double>(cfg.N) * cfg.N);
  RngStream rng(7, 3);
  const ConvIncrement inc = sample_conv_increment(rng, cfg.N, cfg.dt, cfg.noise);
  SolverState st{random_field(cfg.N), 0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(tam_step(st, inc, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TamStep)->Arg(1024)->Arg(8192);

}  // namespace

BENCHMARK_MAIN();
