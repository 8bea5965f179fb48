#include <benchmark/benchmark.h>

#include "batchq/fluid/path.hpp"
#include "batchq/fluid/stationary.hpp"

using namespace batchq;

static void BM_FluidSimulate(benchmark::State& state) {
  const double horizon = static_cast<double>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    RngStream rng(4, stream++);
    auto path = fluid::fluid_simulate(0.0, 1.0, horizon, CutLaw::uniform(), rng);
    benchmark::DoNotOptimize(path.jumps.data());
  }
}
BENCHMARK(BM_FluidSimulate)->Arg(100)->Arg(10000);

static void BM_EmbeddedSampler(benchmark::State& state) {
  std::uint64_t stream = 0;
  const std::size_t n = 10'000;
  for (auto _ : state) {
    RngStream rng(5, stream++);
    auto samples = fluid::embedded_stationary_sampler(n, 1e-12, rng);
    benchmark::DoNotOptimize(samples.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_EmbeddedSampler);
