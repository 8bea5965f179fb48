#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <sstream>

#include "batchq/analytic/stationary.hpp"
#include "batchq/sim/path.hpp"
#include "batchq/sim/replicate.hpp"
#include "batchq/sim/simulate.hpp"
#include "batchq/sim/statistics.hpp"
#include "batchq/stats.hpp"

using namespace batchq;
using namespace batchq::sim;

namespace {

QueuePath run(double lambda, double mu, const ArrivalModel& arrival, const Discipline& disc,
              Engine engine, const StopRule& stop, int q0, std::uint64_t seed,
              std::uint64_t stream, bool keep_events = true) {
  RngStream rng(seed, stream);
  return simulate(ModelParams(lambda, mu), arrival.with_rate(lambda), disc, engine, stop, q0, rng,
                  keep_events);
}

}  // namespace

TEST_CASE("empty system's first event is an arrival") {
  const auto path = run(1.0, 1.0, ArrivalModel::exponential(1.0), FifoBatch{},
                        Engine::Aggregated, StopRule::after_events(1), 0, 1, 0);
  REQUIRE(path.num_steps() == 1);
  CHECK(path.step_sizes[0] == 1);
  CHECK(path.events[0].kind == EventKind::Arrival);
}

TEST_CASE("path sanity and batch bookkeeping across disciplines and engines") {
  const Discipline disciplines[] = {Discipline{FifoBatch{}}, Discipline{LifoBatch{}},
                                    Discipline{GeneralFraction{CutLaw::uniform()}},
                                    Discipline{GeneralFraction{CutLaw::beta(2.0, 2.0)}}};
  const ArrivalModel models[] = {ArrivalModel::exponential(1.0), ArrivalModel::deterministic(1.0),
                                 ArrivalModel::uniform_interval(1.0, 3.0),
                                 ArrivalModel::gamma(2.0, 2.0)};
  std::uint64_t stream = 0;
  for (const auto& disc : disciplines) {
    for (const auto& model : models) {
      for (const auto engine : {Engine::Aggregated, Engine::PerCustomer}) {
        const auto path = run(1.0, 1.0, model, disc, engine, StopRule::after_events(20000), 2, 7,
                              stream++);
        int level = path.q0;
        double prev_t = 0.0;
        for (std::size_t i = 0; i < path.num_steps(); ++i) {
          const auto& ev = path.events[i];
          CHECK(ev.t > prev_t);
          prev_t = ev.t;
          const int before = level;
          level = path.step_sizes[i];
          CHECK(level >= 0);
          if (ev.kind == EventKind::Arrival) {
            CHECK(level == before + 1);
          } else {
            CHECK(ev.batch_size >= 1);
            CHECK(ev.batch_size <= before);
            CHECK(level == before - ev.batch_size);
            CHECK(ev.completer_position >= 1);
            CHECK(ev.completer_position <= before);
            if (std::holds_alternative<FifoBatch>(disc)) {
              CHECK(ev.batch_size == ev.completer_position);
            } else if (std::holds_alternative<LifoBatch>(disc)) {
              CHECK(ev.batch_size == before - ev.completer_position + 1);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("replay is bit-exact") {
  const auto a = run(1.0, 1.0, ArrivalModel::exponential(1.0), FifoBatch{}, Engine::Aggregated,
                     StopRule::after_events(5000), 0, 99, 3);
  const auto b = run(1.0, 1.0, ArrivalModel::exponential(1.0), FifoBatch{}, Engine::Aggregated,
                     StopRule::after_events(5000), 0, 99, 3);
  CHECK(a.step_times == b.step_times);
  CHECK(a.step_sizes == b.step_sizes);
}

TEST_CASE("busy periods read off a synthetic path") {
  QueuePath path;
  path.q0 = 0;
  path.horizon = 5.0;
  path.step_times = {1.0, 3.0, 4.5};
  path.step_sizes = {1, 0, 1};  // arrival, full-batch departure, new arrival (incomplete)
  const auto periods = busy_periods(path);
  REQUIRE(periods.size() == 1);
  CHECK(periods[0] == doctest::Approx(2.0));
}

TEST_CASE("a leading partial busy period is discarded") {
  QueuePath path;
  path.q0 = 2;
  path.horizon = 10.0;
  // initial backlog drains at t=1 (partial period), clean cycle on (2, 5)
  path.step_times = {1.0, 2.0, 5.0};
  path.step_sizes = {0, 1, 0};
  const auto periods = busy_periods(path);
  REQUIRE(periods.size() == 1);
  CHECK(periods[0] == doctest::Approx(3.0));
}

TEST_CASE("busy periods are exponential(mu) regardless of the arrival law") {
  // Insensitivity cell at full scale; more cells live in the acceptance suite.
  const auto path = run(1.0, 1.0, ArrivalModel::uniform_interval(1.0, 3.0), FifoBatch{},
                        Engine::Aggregated, StopRule::at_time(2.3e5), 0, 2024, 11, false);
  auto periods = busy_periods(path);
  REQUIRE(periods.size() >= 100000);
  periods.resize(100000);
  const auto s = stats::summarize(periods);
  CHECK(std::abs(s.mean - 1.0) < 3.0 * s.stderror);
  const double d = stats::ks_statistic(periods, [](double t) { return -std::expm1(-t); });
  CHECK(d < stats::ks_critical_value(periods.size(), 0.01));
}

TEST_CASE("busy period means across smaller cells") {
  std::uint64_t stream = 40;
  for (const auto& model : {ArrivalModel::exponential(1.0), ArrivalModel::deterministic(1.0)}) {
    for (double lambda : {0.1, 10.0}) {
      const double cycle = analytic::mean_cycle(lambda, lambda, model);
      const auto path = run(lambda, 1.0, model, LifoBatch{}, Engine::Aggregated,
                            StopRule::at_time(cycle * 2.2e4), 0, 31, stream++, false);
      auto periods = busy_periods(path);
      REQUIRE(periods.size() >= 20000);
      periods.resize(20000);
      const auto s = stats::summarize(periods);
      CHECK(std::abs(s.mean - 1.0) < 3.0 * s.stderror);
    }
  }
}

TEST_CASE("time average of a constant path is a point mass") {
  QueuePath path;
  path.q0 = 3;
  path.horizon = 10.0;
  const auto pmf = time_average_pmf(path, 0.0, 5);
  CHECK(pmf[3] == doctest::Approx(1.0));
  CHECK(pmf[0] == 0.0);
}

TEST_CASE("time averages converge to the stationary pmf") {
  const auto path = run(1.0, 1.0, ArrivalModel::exponential(1.0), FifoBatch{},
                        Engine::Aggregated, StopRule::at_time(1e6), 0, 5, 21, false);
  const auto pmf = time_average_pmf(path, 0.0, 10);
  for (int k = 0; k <= 10; ++k) {
    const double target = analytic::stationary_pmf(k, 1.0, ArrivalModel::exponential(1.0));
    CHECK(std::abs(pmf[static_cast<std::size_t>(k)] - target) < 0.005);
  }
}

TEST_CASE("aggregated and per-customer engines agree in law") {
  const auto agg = run(1.0, 1.0, ArrivalModel::exponential(1.0), FifoBatch{}, Engine::Aggregated,
                       StopRule::after_events(100000), 0, 77, 31, false);
  const auto per = run(1.0, 1.0, ArrivalModel::exponential(1.0), FifoBatch{}, Engine::PerCustomer,
                       StopRule::after_events(100000), 0, 77, 32, false);
  const auto pa = time_average_pmf(agg, 0.0, 30);
  const auto pp = time_average_pmf(per, 0.0, 30);
  CHECK(stats::total_variation(pa, pp) < 0.01);
  auto ba = busy_periods(agg);
  auto bp = busy_periods(per);
  const double crit = stats::ks_two_sample_critical(ba.size(), bp.size(), 0.01);
  CHECK(stats::ks_two_sample(ba, bp) < crit);
}

TEST_CASE("conditional post-departure size is uniform") {
  // Draws from states 5..15 at rho=10; each state contributes a chi-square
  // block, blocks add up with their degrees of freedom.
  const auto path = run(1.0, 0.1, ArrivalModel::exponential(1.0), FifoBatch{},
                        Engine::Aggregated, StopRule::at_time(1e5), 0, 6, 41);
  std::vector<std::vector<std::uint64_t>> counts(16);
  for (int i = 5; i <= 15; ++i) counts[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(i), 0);
  int level = path.q0;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < path.num_steps(); ++i) {
    const auto& ev = path.events[i];
    const int before = level;
    level = path.step_sizes[i];
    if (ev.kind == EventKind::DepartureBatch && before >= 5 && before <= 15) {
      ++counts[static_cast<std::size_t>(before)][static_cast<std::size_t>(level)];
      ++total;
    }
  }
  REQUIRE(total >= 10000);
  double stat = 0.0;
  double df = 0.0;
  for (int i = 5; i <= 15; ++i) {
    const auto& c = counts[static_cast<std::size_t>(i)];
    std::uint64_t n = 0;
    for (auto v : c) n += v;
    if (n < 50) continue;
    std::vector<double> expected(c.size(), static_cast<double>(n) / static_cast<double>(c.size()));
    stat += stats::chi_square_statistic(c, expected);
    df += static_cast<double>(c.size()) - 1.0;
  }
  CHECK(stat < stats::chi_square_critical(df, 0.01));
}

TEST_CASE("a uniform cut fraction reproduces the uniform post-departure law") {
  // floor(B*i) with B uniform on (0,1) is uniform on {0..i-1}; the general
  // fraction discipline with a uniform cut must therefore match the batch
  // disciplines in law.
  const auto path = run(1.0, 0.1, ArrivalModel::exponential(1.0),
                        GeneralFraction{CutLaw::uniform()}, Engine::Aggregated,
                        StopRule::at_time(1e5), 0, 23, 45);
  std::vector<std::vector<std::uint64_t>> counts(16);
  for (int i = 5; i <= 15; ++i)
    counts[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(i), 0);
  int level = path.q0;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < path.num_steps(); ++i) {
    const int before = level;
    level = path.step_sizes[i];
    if (path.events[i].kind == EventKind::DepartureBatch && before >= 5 && before <= 15) {
      ++counts[static_cast<std::size_t>(before)][static_cast<std::size_t>(level)];
      ++total;
    }
  }
  REQUIRE(total >= 10000);
  double stat = 0.0, df = 0.0;
  for (int i = 5; i <= 15; ++i) {
    const auto& c = counts[static_cast<std::size_t>(i)];
    std::uint64_t n = 0;
    for (auto v : c) n += v;
    if (n < 50) continue;
    std::vector<double> expected(c.size(), static_cast<double>(n) / static_cast<double>(c.size()));
    stat += stats::chi_square_statistic(c, expected);
    df += static_cast<double>(c.size()) - 1.0;
  }
  CHECK(stat < stats::chi_square_critical(df, 0.01));
}

TEST_CASE("departure records read off a synthetic event log") {
  QueuePath path;
  path.q0 = 7;
  path.horizon = 10.0;
  path.has_events = true;
  // period 1: one departure 7 -> 2; period 2: two departures; period 3 has none.
  path.events = {
      {0.4, EventKind::DepartureBatch, 5, 3},  // 7 -> 2
      {1.0, EventKind::Arrival, 0, 0},         // S_1, X_1 = 2 -> 3
      {1.2, EventKind::DepartureBatch, 1, 1},  // 3 -> 2
      {1.7, EventKind::DepartureBatch, 1, 1},  // 2 -> 1
      {2.0, EventKind::Arrival, 0, 0},         // S_2, X_2 = 1 -> 2
      {3.0, EventKind::Arrival, 0, 0},         // S_3 closes an empty period
  };
  path.step_times = {0.4, 1.0, 1.2, 1.7, 2.0, 3.0};
  path.step_sizes = {2, 3, 2, 1, 2, 3};
  const auto records = departure_records(path);
  REQUIRE(records.size() == 2);
  CHECK(records[0].period_index == 1);
  CHECK(records[0].start_level == 7);
  CHECK(records[0].end_level == 2);
  CHECK(records[0].single);
  CHECK(records[0].last_departure == doctest::Approx(0.4));
  CHECK(records[1].period_index == 2);
  CHECK(records[1].start_level == 3);
  CHECK(records[1].end_level == 1);
  CHECK_FALSE(records[1].single);
  CHECK(records[1].last_departure == doctest::Approx(1.7));
}

TEST_CASE("departure records on simulated paths decrease within each period") {
  const auto path = run(1.0, 0.5, ArrivalModel::exponential(1.0), LifoBatch{},
                        Engine::Aggregated, StopRule::after_events(20000), 0, 13, 51);
  const auto records = departure_records(path);
  REQUIRE(records.size() > 100);
  long prev_period = 0;
  for (const auto& r : records) {
    CHECK(r.end_level < r.start_level);
    CHECK(r.period_index > prev_period);
    prev_period = r.period_index;
  }
  // the queue grows by exactly one per arrival: max level <= q0 + #arrivals
  std::size_t arrivals = 0;
  int max_level = 0;
  for (std::size_t i = 0; i < path.num_steps(); ++i) {
    if (path.events[i].kind == EventKind::Arrival) ++arrivals;
    max_level = std::max(max_level, path.step_sizes[i]);
  }
  CHECK(max_level <= path.q0 + static_cast<int>(arrivals));
}

TEST_CASE("departure records require the event log") {
  const auto path = run(1.0, 1.0, ArrivalModel::exponential(1.0), FifoBatch{},
                        Engine::Aggregated, StopRule::after_events(100), 0, 1, 61, false);
  CHECK_THROWS_AS((void)departure_records(path), std::logic_error);
}

TEST_CASE("replicate merges by index, deterministically across thread counts") {
  auto job = [](int i, RngStream& rng) {
    double sum = 0.0;
    for (int k = 0; k < 100; ++k) sum += rng.next_double();
    return sum + i;
  };
  const auto serial = replicate<double>(16, 5, 1000, job, 1);
  const auto threaded = replicate<double>(16, 5, 1000, job, 4);
  CHECK(serial == threaded);
  const auto single = replicate<double>(1, 5, 1000, job, 1);
  CHECK(single[0] == serial[0]);
}

TEST_CASE("replicate reports the failing replication index") {
  auto job = [](int i, RngStream&) -> int {
    if (i == 5) throw std::runtime_error("boom");
    return i;
  };
  try {
    (void)replicate<int>(8, 1, 0, job, 2);
    FAIL("expected a throw");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("5") != std::string::npos);
  }
}

TEST_CASE("replication means tighten like one over sqrt(n)") {
  auto job = [](int, RngStream& rng) {
    const ModelParams params(1.0, 1.0);
    const auto path = simulate(params, ArrivalModel::exponential(1.0), FifoBatch{},
                               Engine::Aggregated, StopRule::at_time(2200.0), 0, rng, false);
    auto periods = busy_periods(path);
    periods.resize(1000);
    return stats::summarize(periods);
  };
  const auto summaries = replicate<stats::SampleSummary>(100, 8, 2000, job, 0);
  std::vector<double> means;
  double pooled_sd = 0.0;
  for (const auto& s : summaries) {
    means.push_back(s.mean);
    pooled_sd += s.stddev;
  }
  pooled_sd /= static_cast<double>(summaries.size());
  const auto spread = stats::summarize(means);
  // sd of a 1000-sample mean should be close to sd/sqrt(1000)
  const double expected = pooled_sd / std::sqrt(1000.0);
  CHECK(spread.stddev > 0.6 * expected);
  CHECK(spread.stddev < 1.6 * expected);
}

TEST_CASE("path csv export is deterministic and lossless") {
  const auto path = run(1.0, 1.0, ArrivalModel::exponential(1.0), FifoBatch{},
                        Engine::Aggregated, StopRule::after_events(500), 0, 3, 71);
  std::ostringstream a, b;
  write_path_csv(a, path);
  write_path_csv(b, path);
  CHECK(a.str() == b.str());

  std::istringstream in(a.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,kind,q_after,batch_size");
  std::size_t idx = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    const double t = std::strtod(line.substr(0, comma).c_str(), nullptr);
    CHECK(t == path.step_times[idx]);  // 17 significant digits round-trip
    ++idx;
  }
  CHECK(idx == path.num_steps());
}

TEST_CASE("size_at is right-continuous") {
  QueuePath path;
  path.q0 = 0;
  path.horizon = 3.0;
  path.step_times = {1.0, 2.0};
  path.step_sizes = {1, 0};
  CHECK(path.size_at(0.5) == 0);
  CHECK(path.size_at(1.0) == 1);
  CHECK(path.size_at(1.5) == 1);
  CHECK(path.size_at(2.0) == 0);
}
