#include <benchmark/benchmark.h>

#include "batchq/arrival.hpp"
#include "batchq/params.hpp"
#include "batchq/sim/simulate.hpp"
#include "batchq/sim/statistics.hpp"

using namespace batchq;

static void BM_SimulateAggregated(benchmark::State& state) {
  const double rho = static_cast<double>(state.range(0));
  const ModelParams params = ModelParams::from_rho(1.0, rho);
  const ArrivalModel arrival = ArrivalModel::exponential(1.0);
  const std::uint64_t events = 100'000;
  std::uint64_t stream = 0;
  for (auto _ : state) {
    RngStream rng(1, stream++);
    auto path = sim::simulate(params, arrival, FifoBatch{}, sim::Engine::Aggregated,
                              sim::StopRule::after_events(events), 0, rng, false);
    benchmark::DoNotOptimize(path.step_sizes.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(events));
}
BENCHMARK(BM_SimulateAggregated)->Arg(1)->Arg(100)->Arg(10000);

static void BM_SimulatePerCustomer(benchmark::State& state) {
  const double rho = static_cast<double>(state.range(0));
  const ModelParams params = ModelParams::from_rho(1.0, rho);
  const ArrivalModel arrival = ArrivalModel::exponential(1.0);
  const std::uint64_t events = 20'000;
  std::uint64_t stream = 0;
  for (auto _ : state) {
    RngStream rng(2, stream++);
    auto path = sim::simulate(params, arrival, FifoBatch{}, sim::Engine::PerCustomer,
                              sim::StopRule::after_events(events), 0, rng, false);
    benchmark::DoNotOptimize(path.step_sizes.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(events));
}
BENCHMARK(BM_SimulatePerCustomer)->Arg(1)->Arg(100);

static void BM_BusyPeriodExtraction(benchmark::State& state) {
  RngStream rng(3, 0);
  const auto path = sim::simulate(ModelParams(1.0, 1.0), ArrivalModel::exponential(1.0),
                                  FifoBatch{}, sim::Engine::Aggregated,
                                  sim::StopRule::after_events(200'000), 0, rng, false);
  for (auto _ : state) {
    auto periods = sim::busy_periods(path);
    benchmark::DoNotOptimize(periods.data());
  }
}
BENCHMARK(BM_BusyPeriodExtraction);
