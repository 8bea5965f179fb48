#include "batchq/experiments/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "batchq/analytic/rayleigh.hpp"
#include "batchq/analytic/stationary.hpp"
#include "batchq/fluid/path.hpp"
#include "batchq/params.hpp"
#include "batchq/sim/replicate.hpp"
#include "batchq/sim/simulate.hpp"
#include "batchq/sim/statistics.hpp"
#include "batchq/stats.hpp"

namespace batchq::experiments {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stream-id offsets inside a study's block.
constexpr std::uint64_t kFluidStreamOffset = 500'000;

std::vector<double> tail_grid() {
  std::vector<double> xs;
  for (int i = 1; i <= 30; ++i) xs.push_back(0.1 * i);
  return xs;
}

}  // namespace

double ScaledPath::value_at(double t) const {
  if (!(t >= 0.0) || t > horizon)
    throw std::out_of_range("ScaledPath::value_at: t outside [0,horizon]");
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return initial_level;
  return levels[static_cast<std::size_t>(it - times.begin()) - 1];
}

std::uint64_t expected_event_count(double rho, double lambda, double horizon_T, int q0) {
  const double arrivals = lambda * std::sqrt(rho) * horizon_T;
  return static_cast<std::uint64_t>(2.0 * arrivals) + static_cast<std::uint64_t>(q0) + 64;
}

ScaledPath scaled_path(double rho, const ScalingConfig& config, int q0, RngStream& rng) {
  if (!(rho > 0.0)) throw std::invalid_argument("scaled_path: rho must be > 0");
  const std::uint64_t expected = expected_event_count(rho, config.lambda, config.horizon_T, q0);
  if (expected > config.event_cap)
    throw ResourceLimitError("scaled_path: expected event count " + std::to_string(expected) +
                             " exceeds cap " + std::to_string(config.event_cap));
  const double root = std::sqrt(rho);
  const ModelParams params = ModelParams::from_rho(config.lambda, rho);
  const ArrivalModel arrival = config.arrival.with_rate(config.lambda);
  const auto path =
      sim::simulate(params, arrival, FifoBatch{}, sim::Engine::Aggregated,
                    sim::StopRule::at_time(root * config.horizon_T), q0, rng, false);

  ScaledPath scaled;
  scaled.rho = rho;
  scaled.horizon = config.horizon_T;
  scaled.initial_level = static_cast<double>(q0) / root;
  scaled.first_drop = std::numeric_limits<double>::infinity();
  scaled.times.reserve(path.step_times.size());
  scaled.levels.reserve(path.step_sizes.size());
  int prev = q0;
  for (std::size_t i = 0; i < path.step_times.size(); ++i) {
    scaled.times.push_back(path.step_times[i] / root);
    scaled.levels.push_back(static_cast<double>(path.step_sizes[i]) / root);
    if (path.step_sizes[i] < prev && std::isinf(scaled.first_drop))
      scaled.first_drop = path.step_times[i] / root;
    prev = path.step_sizes[i];
  }
  return scaled;
}

namespace {

struct FirstPeriods {
  std::vector<sim::DepartureRecord> records;
};

std::uint64_t first_periods_budget(double rho, int n_periods) {
  return static_cast<std::uint64_t>(6.0 * std::sqrt(rho) * (n_periods + 1)) + 512;
}

// Simulate from an empty queue until the first n_periods departure-bearing
// inter-arrival periods have closed; the event budget makes a shortfall a
// (reported) impossibility rather than a silent truncation.
FirstPeriods first_departure_periods(double rho, int n_periods, const ScalingConfig& config,
                                     RngStream& rng) {
  const std::uint64_t budget = first_periods_budget(rho, n_periods);
  if (budget > config.event_cap)
    throw ResourceLimitError("first_departure_periods: event budget exceeds cap");
  const ModelParams params = ModelParams::from_rho(config.lambda, rho);
  const ArrivalModel arrival = config.arrival.with_rate(config.lambda);
  const auto path = sim::simulate(params, arrival, FifoBatch{}, sim::Engine::Aggregated,
                                  sim::StopRule::after_events(budget), 0, rng, true);
  auto records = sim::departure_records(path);
  if (static_cast<int>(records.size()) < n_periods)
    throw std::runtime_error("first_departure_periods: event budget too small for " +
                             std::to_string(n_periods) + " periods");
  records.resize(static_cast<std::size_t>(n_periods));
  return FirstPeriods{std::move(records)};
}

// The guard is enforced before any replication launches so the error arrives
// as ResourceLimitError, not wrapped in a replication failure.
void guard_events(std::uint64_t expected, std::uint64_t cap, const char* where) {
  if (expected > cap)
    throw ResourceLimitError(std::string(where) + ": expected event count " +
                             std::to_string(expected) + " exceeds cap " + std::to_string(cap));
}

}  // namespace

std::vector<double> single_departure_frequency(double rho, int l_max,
                                               const ScalingConfig& config,
                                               std::uint64_t stream_base) {
  if (l_max < 1) throw std::invalid_argument("single_departure_frequency: l_max must be >= 1");
  guard_events(first_periods_budget(rho, l_max), config.event_cap, "single_departure_frequency");
  const auto flags = sim::replicate<std::vector<bool>>(
      config.replications, config.seed, stream_base,
      [&](int, RngStream& rng) {
        const auto periods = first_departure_periods(rho, l_max, config, rng);
        std::vector<bool> single(static_cast<std::size_t>(l_max));
        for (int l = 0; l < l_max; ++l)
          single[static_cast<std::size_t>(l)] = periods.records[static_cast<std::size_t>(l)].single;
        return single;
      },
      config.threads);

  std::vector<double> freq(static_cast<std::size_t>(l_max), 0.0);
  for (const auto& f : flags)
    for (int l = 0; l < l_max; ++l)
      if (f[static_cast<std::size_t>(l)]) freq[static_cast<std::size_t>(l)] += 1.0;
  for (double& v : freq) v /= static_cast<double>(config.replications);
  return freq;
}

ComparisonReport embedded_convergence(double rho, int n_jumps, const ScalingConfig& config,
                                      std::uint64_t stream_base, std::size_t fluid_samples) {
  if (n_jumps < 1) throw std::invalid_argument("embedded_convergence: n_jumps must be >= 1");
  guard_events(first_periods_budget(rho, n_jumps), config.event_cap, "embedded_convergence");
  const double root = std::sqrt(rho);

  struct Scaled {
    std::vector<double> start, end, dep, ratio;
  };
  const auto reps = sim::replicate<std::vector<sim::DepartureRecord>>(
      config.replications, config.seed, stream_base,
      [&](int, RngStream& rng) {
        return first_departure_periods(rho, n_jumps, config, rng).records;
      },
      config.threads);

  std::vector<Scaled> sim_side(static_cast<std::size_t>(n_jumps));
  for (auto& s : sim_side) {
    s.start.reserve(reps.size());
    s.end.reserve(reps.size());
    s.dep.reserve(reps.size());
    s.ratio.reserve(reps.size());
  }
  for (const auto& records : reps) {
    for (int l = 0; l < n_jumps; ++l) {
      const auto& r = records[static_cast<std::size_t>(l)];
      auto& s = sim_side[static_cast<std::size_t>(l)];
      s.start.push_back(static_cast<double>(r.start_level) / root);
      s.end.push_back(static_cast<double>(r.end_level) / root);
      s.dep.push_back(r.last_departure / root);
      s.ratio.push_back(static_cast<double>(r.end_level) / static_cast<double>(r.start_level));
    }
  }

  // Fluid reference: independent ledgers from level zero, long enough that
  // missing the n-th jump has probability well below e^{-100}.
  std::vector<Scaled> fluid_side(static_cast<std::size_t>(n_jumps));
  {
    RngStream rng(config.seed, stream_base + kFluidStreamOffset);
    for (auto& s : fluid_side) {
      s.start.reserve(fluid_samples);
      s.end.reserve(fluid_samples);
      s.dep.reserve(fluid_samples);
    }
    const double horizon = 20.0 * static_cast<double>(n_jumps) / config.lambda;
    for (std::size_t i = 0; i < fluid_samples; ++i) {
      const auto path = fluid::fluid_simulate(0.0, config.lambda, horizon, CutLaw::uniform(), rng);
      if (static_cast<int>(path.jumps.size()) < n_jumps)
        throw std::runtime_error("embedded_convergence: fluid reference horizon too short");
      for (int l = 0; l < n_jumps; ++l) {
        const auto& jump = path.jumps[static_cast<std::size_t>(l)];
        auto& s = fluid_side[static_cast<std::size_t>(l)];
        s.start.push_back(jump.pre);
        s.end.push_back(jump.post);
        s.dep.push_back(jump.tau);
      }
    }
  }

  ComparisonReport report;
  const std::size_t n1 = static_cast<std::size_t>(config.replications);
  const double ks2_crit = stats::ks_two_sample_critical(n1, fluid_samples, config.alpha);
  const double ks1_crit = stats::ks_critical_value(n1, config.alpha);
  auto add_ks2 = [&](const std::string& stat, std::vector<double> a, std::vector<double> b) {
    const double d = stats::ks_two_sample(std::move(a), std::move(b));
    report.add(StatRow{"embedded", stat, rho, d, ks2_crit, d < ks2_crit, config.seed, n1,
                       fluid_samples});
  };
  for (int l = 0; l < n_jumps; ++l) {
    const std::string suffix = "_" + std::to_string(l + 1);
    auto& s = sim_side[static_cast<std::size_t>(l)];
    auto& f = fluid_side[static_cast<std::size_t>(l)];
    add_ks2("ks_pre" + suffix, s.start, f.start);
    add_ks2("ks_post" + suffix, s.end, f.end);
    add_ks2("ks_tau" + suffix, s.dep, f.dep);
    const double d_ratio =
        stats::ks_statistic(s.ratio, [](double x) { return std::clamp(x, 0.0, 1.0); });
    report.add(StatRow{"embedded", "ks_cut_ratio" + suffix, rho, d_ratio, ks1_crit,
                       d_ratio < ks1_crit, config.seed, n1, 0});
  }

  // Empirical tail of the scaled first start level against the closed-form
  // product prod_{i=1}^{k-1} L(i/rho) at k = ceil(x sqrt(rho)).
  {
    const ArrivalModel arrival = config.arrival.with_rate(config.lambda);
    std::vector<double> sorted = sim_side[0].start;
    std::sort(sorted.begin(), sorted.end());
    double sup = 0.0;
    double prod = 1.0;
    int k = 1;  // prod holds prod_{i=1}^{k-1} L(i/rho)
    for (double x : tail_grid()) {
      const int kx = static_cast<int>(std::ceil(x * root));
      for (; k < kx; ++k) prod *= arrival.lst_normalized(static_cast<double>(k) / rho);
      // empirical P{start >= x}; start levels are k/sqrt(rho), so >= x iff k >= kx
      const double threshold = static_cast<double>(kx) / root;
      const auto it = std::lower_bound(sorted.begin(), sorted.end(), threshold);
      const double emp =
          static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
      sup = std::max(sup, std::abs(emp - prod));
    }
    report.add(StatRow{"embedded", "sup_start_tail_error", rho, sup, 0.03, sup < 0.03,
                       config.seed, n1, 0});
  }
  return report;
}

ComparisonReport stationary_rayleigh_study(const std::vector<double>& rho_list,
                                           const ArrivalModel& arrival, double sup_threshold,
                                           double mean_rho, double mean_rel_threshold) {
  if (rho_list.empty()) throw std::invalid_argument("stationary_rayleigh_study: empty rho list");
  ComparisonReport report;
  const auto grid = tail_grid();
  std::vector<double> sups;
  for (double rho : rho_list) {
    const double root = std::sqrt(rho);
    const int k_top = static_cast<int>(std::ceil(grid.back() * root)) + 1;
    const auto table = analytic::StationaryTailTable::build(k_top, rho, arrival);
    double sup = 0.0;
    for (double x : grid) {
      const int k = static_cast<int>(std::ceil(x * root));
      sup = std::max(sup, std::abs(table.tail(k) - analytic::rayleigh_tail(x)));
    }
    sups.push_back(sup);
    const bool is_last = rho == rho_list.back();
    report.add(StatRow{"rayleigh", "sup_tail_distance", rho, sup,
                       is_last ? sup_threshold : kNaN, !is_last || sup < sup_threshold, 0,
                       static_cast<std::size_t>(grid.size()), 0});
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < sups.size(); ++i) decreasing = decreasing && sups[i] < sups[i - 1];
  if (sups.size() > 1)
    report.add(StatRow{"rayleigh", "sup_tail_distance_decreasing", rho_list.back(),
                       decreasing ? 1.0 : 0.0, kNaN, decreasing, 0, sups.size(), 0});

  if (mean_rho > 0.0) {
    const auto mean = analytic::mean_stationary(mean_rho, arrival, 1e-8);
    const double ratio = mean.value / std::sqrt(mean_rho);
    const double target = std::sqrt(std::numbers::pi / 2.0);
    const double rel = std::abs(ratio - target) / target;
    report.add(StatRow{"rayleigh", "mean_over_sqrt_rho_rel_error", mean_rho, rel,
                       mean_rel_threshold, rel < mean_rel_threshold, 0,
                       static_cast<std::size_t>(mean.terms), 0});
  }
  return report;
}

ComparisonReport finite_dim_compare(double rho, const std::vector<double>& times,
                                    const ScalingConfig& config, std::uint64_t stream_base) {
  if (times.empty()) throw std::invalid_argument("finite_dim_compare: no time points");
  for (double t : times) {
    if (t < 0.0 || t > config.horizon_T)
      throw std::invalid_argument("finite_dim_compare: time point outside horizon");
  }
  guard_events(expected_event_count(rho, config.lambda, config.horizon_T, 0), config.event_cap,
               "finite_dim_compare");

  struct Marginal {
    double value;
    bool jumped;
  };
  const auto sim_vals = sim::replicate<std::vector<Marginal>>(
      config.replications, config.seed, stream_base,
      [&](int, RngStream& rng) {
        const auto path = scaled_path(rho, config, 0, rng);
        std::vector<Marginal> vals;
        vals.reserve(times.size());
        for (double t : times) vals.push_back({path.value_at(t), path.first_drop <= t});
        return vals;
      },
      config.threads);

  const auto fluid_vals = sim::replicate<std::vector<Marginal>>(
      config.replications, config.seed, stream_base + kFluidStreamOffset,
      [&](int, RngStream& rng) {
        const auto path =
            fluid::fluid_simulate(0.0, config.lambda, config.horizon_T, CutLaw::uniform(), rng);
        const double first_jump =
            path.jumps.empty() ? std::numeric_limits<double>::infinity() : path.jumps[0].tau;
        std::vector<Marginal> vals;
        vals.reserve(times.size());
        for (double t : times) vals.push_back({path.value(t), first_jump <= t});
        return vals;
      },
      config.threads);

  ComparisonReport report;
  const std::size_t n = static_cast<std::size_t>(config.replications);
  const double z_crit = stats::normal_quantile(1.0 - config.alpha / 2.0);
  for (std::size_t j = 0; j < times.size(); ++j) {
    const std::string suffix = "_t" + std::to_string(times[j]);
    std::vector<double> a, b;
    std::size_t a_total = 0, b_total = 0;
    for (const auto& v : sim_vals) {
      ++a_total;
      if (v[j].jumped) a.push_back(v[j].value);
    }
    for (const auto& v : fluid_vals) {
      ++b_total;
      if (v[j].jumped) b.push_back(v[j].value);
    }

    // No-jump mass: the atom of the limit marginal at lambda*t.
    const double pa = 1.0 - static_cast<double>(a.size()) / static_cast<double>(a_total);
    const double pb = 1.0 - static_cast<double>(b.size()) / static_cast<double>(b_total);
    const double pooled = 0.5 * (pa + pb);
    const double prop_threshold =
        z_crit * std::sqrt(std::max(pooled * (1.0 - pooled), 1e-12) *
                           (1.0 / static_cast<double>(a_total) + 1.0 / static_cast<double>(b_total)));
    report.add(StatRow{"fdd", "atom_mass_diff" + suffix, rho, std::abs(pa - pb), prop_threshold,
                       std::abs(pa - pb) <= prop_threshold, config.seed, a_total, b_total});

    if (a.size() >= 50 && b.size() >= 50) {
      const double crit = stats::ks_two_sample_critical(a.size(), b.size(), config.alpha);
      const std::size_t na = a.size(), nb = b.size();
      const double d = stats::ks_two_sample(std::move(a), std::move(b));
      report.add(StatRow{"fdd", "ks_jumped" + suffix, rho, d, crit, d < crit, config.seed, na, nb});
    } else if (times[j] == 0.0) {
      // both marginals are the deterministic initial level
      std::vector<double> fa, fb;
      for (const auto& v : sim_vals) fa.push_back(v[j].value);
      for (const auto& v : fluid_vals) fb.push_back(v[j].value);
      const double crit = stats::ks_two_sample_critical(n, n, config.alpha);
      const double d = stats::ks_two_sample(std::move(fa), std::move(fb));
      report.add(StatRow{"fdd", "ks" + suffix, rho, d, crit, d < crit, config.seed, n, n});
    }
  }
  return report;
}

}  // namespace batchq::experiments
