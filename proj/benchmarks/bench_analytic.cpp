#include <benchmark/benchmark.h>

#include "batchq/analytic/stationary.hpp"
#include "batchq/analytic/transient.hpp"
#include "batchq/arrival.hpp"

using namespace batchq;

static void BM_StationaryTailTable(benchmark::State& state) {
  const int k_max = static_cast<int>(state.range(0));
  const ArrivalModel arrival = ArrivalModel::uniform_interval(1.0, 3.0);
  for (auto _ : state) {
    auto table = analytic::StationaryTailTable::build(k_max, 100.0, arrival);
    benchmark::DoNotOptimize(table.tails.data());
  }
}
BENCHMARK(BM_StationaryTailTable)->Arg(100)->Arg(1000);

static void BM_MeanStationary(benchmark::State& state) {
  const double rho = static_cast<double>(state.range(0));
  const ArrivalModel arrival = ArrivalModel::exponential(1.0);
  for (auto _ : state) {
    auto mean = analytic::mean_stationary(rho, arrival, 1e-10);
    benchmark::DoNotOptimize(mean.value);
  }
}
BENCHMARK(BM_MeanStationary)->Arg(100)->Arg(10000)->Arg(1000000);

static void BM_TransientTableBuild(benchmark::State& state) {
  const int k_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto table = analytic::CoefficientTable::build(k_max, {1.0}, 1.0, 1.0);
    benchmark::DoNotOptimize(table.k_max());
  }
}
BENCHMARK(BM_TransientTableBuild)->Arg(50)->Arg(150)->Arg(400);

static void BM_TransientEvaluate(benchmark::State& state) {
  const auto table = analytic::CoefficientTable::build(150, {1.0}, 1.0, 1.0);
  double t = 0.0;
  for (auto _ : state) {
    t += 0.1;
    if (t > 40.0) t = 0.1;
    auto pmf = table.evaluate(t);
    benchmark::DoNotOptimize(pmf.data());
  }
}
BENCHMARK(BM_TransientEvaluate);
