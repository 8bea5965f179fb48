#include "batchq/experiments/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "batchq/analytic/moments.hpp"
#include "batchq/analytic/rayleigh.hpp"
#include "batchq/analytic/stationary.hpp"
#include "batchq/analytic/transient.hpp"
#include "batchq/experiments/scaling.hpp"
#include "batchq/fluid/path.hpp"
#include "batchq/fluid/stationary.hpp"
#include "batchq/params.hpp"
#include "batchq/sim/replicate.hpp"
#include "batchq/sim/simulate.hpp"
#include "batchq/sim/statistics.hpp"
#include "batchq/stats.hpp"

namespace batchq::experiments {

namespace {

constexpr double kAlpha = 0.01;

// Each criterion draws from its own block of stream ids.
constexpr std::uint64_t kStreamBlock = 10'000'000;

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(3);
  out << v;
  return out.str();
}

struct Check {
  bool pass = true;
  std::string worst;

  void expect(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      worst = what;
    }
  }
};

struct NamedArrival {
  std::string name;
  ArrivalModel model;
};

std::vector<NamedArrival> acceptance_arrivals() {
  return {
      {"exp", ArrivalModel::exponential(1.0)},
      {"det", ArrivalModel::deterministic(1.0)},
      {"uniform", ArrivalModel::uniform_interval(1.0, 3.0)},
  };
}

std::vector<NamedArrival> all_arrivals() {
  auto v = acceptance_arrivals();
  v.push_back({"gamma", ArrivalModel::gamma(2.0, 2.0)});
  return v;
}

std::vector<double> simulated_busy_periods(const ArrivalModel& arrival, double lambda,
                                           std::size_t count, std::uint64_t seed,
                                           std::uint64_t stream) {
  const ModelParams params(lambda, 1.0);
  const double cycle = analytic::mean_cycle(params.rho(), lambda, arrival);
  const double horizon = cycle * static_cast<double>(count) * 1.08 + 10.0;
  RngStream rng(seed, stream);
  const auto path = sim::simulate(params, arrival.with_rate(lambda), FifoBatch{},
                                  sim::Engine::Aggregated, sim::StopRule::at_time(horizon), 0,
                                  rng, false);
  auto periods = sim::busy_periods(path);
  if (periods.size() < count) return periods;
  periods.resize(count);
  return periods;
}

// ---------------------------------------------------------------------------
// 1. Busy-period insensitivity: exponential with the service rate for every
//    arrival law and arrival rate.
CriterionResult criterion_busy_period(const AcceptanceOptions& opt) {
  CriterionResult res{1, "busy-period insensitivity", false, "", 0.0};
  Check check;
  const std::size_t n = 100'000;
  const double ks_crit = stats::ks_critical_value(n, kAlpha);
  std::uint64_t stream = 1 * kStreamBlock;
  for (const auto& [name, arrival] : acceptance_arrivals()) {
    for (double lambda : {0.1, 1.0, 10.0}) {
      const auto periods = simulated_busy_periods(arrival, lambda, n, opt.seed, stream++);
      check.expect(periods.size() == n,
                   name + " lambda=" + fmt(lambda) + ": only " + std::to_string(periods.size()) +
                       " busy periods");
      if (periods.size() != n) continue;
      const auto s = stats::summarize(periods);
      const double dev = std::abs(s.mean - 1.0);
      check.expect(dev < 3.0 * s.stderror, name + " lambda=" + fmt(lambda) +
                                               ": mean dev " + fmt(dev) + " > 3se " +
                                               fmt(3.0 * s.stderror));
      const double d =
          stats::ks_statistic(periods, [](double t) { return -std::expm1(-t); });
      check.expect(d < ks_crit,
                   name + " lambda=" + fmt(lambda) + ": KS " + fmt(d) + " > " + fmt(ks_crit));
    }
  }
  res.pass = check.pass;
  res.detail = check.pass ? "9 cells, mean within 3se and KS below critical" : check.worst;
  return res;
}

// ---------------------------------------------------------------------------
// 2. FIFO and LIFO batches generate the same law: total-variation distance of
//    time-average pmfs and a two-sample KS on busy periods.
CriterionResult criterion_discipline_equivalence(const AcceptanceOptions& opt) {
  CriterionResult res{2, "discipline equivalence (FIFO vs LIFO)", false, "", 0.0};
  const double horizon = 1e6;
  const int k_max = 40;
  const ModelParams params(1.0, 1.0);
  const ArrivalModel arrival = ArrivalModel::exponential(1.0);

  RngStream rng_fifo(opt.seed, 2 * kStreamBlock);
  RngStream rng_lifo(opt.seed, 2 * kStreamBlock + 1);
  const auto fifo = sim::simulate(params, arrival, FifoBatch{}, sim::Engine::Aggregated,
                                  sim::StopRule::at_time(horizon), 0, rng_fifo, false);
  const auto lifo = sim::simulate(params, arrival, LifoBatch{}, sim::Engine::Aggregated,
                                  sim::StopRule::at_time(horizon), 0, rng_lifo, false);

  const auto pmf_fifo = sim::time_average_pmf(fifo, 0.0, k_max);
  const auto pmf_lifo = sim::time_average_pmf(lifo, 0.0, k_max);
  const double tv = stats::total_variation(pmf_fifo, pmf_lifo);

  auto busy_fifo = sim::busy_periods(fifo);
  auto busy_lifo = sim::busy_periods(lifo);
  const double crit = stats::ks_two_sample_critical(busy_fifo.size(), busy_lifo.size(), kAlpha);
  const double d = stats::ks_two_sample(busy_fifo, busy_lifo);

  Check check;
  check.expect(tv < 0.01, "TV " + fmt(tv) + " >= 0.01");
  check.expect(d < crit, "busy-period KS " + fmt(d) + " > " + fmt(crit));
  res.pass = check.pass;
  res.detail = check.pass ? "TV " + fmt(tv) + " < 0.01, KS " + fmt(d) + " < " + fmt(crit)
                          : check.worst;
  return res;
}

// ---------------------------------------------------------------------------
// 3. Stationary tails: simulation against the closed form, the Poisson
//    product form, and the cycle/level-mean reconstruction.
CriterionResult criterion_stationary_formula(const AcceptanceOptions& opt) {
  CriterionResult res{3, "stationary distribution formula", false, "", 0.0};
  Check check;
  std::uint64_t stream = 3 * kStreamBlock;
  const double lambda = 1.0;
  for (const auto& [name, arrival] : acceptance_arrivals()) {
    for (double rho : {0.5, 1.0, 10.0}) {
      RngStream rng(opt.seed, stream++);
      const ModelParams params = ModelParams::from_rho(lambda, rho);
      const auto path = sim::simulate(params, arrival.with_rate(lambda), FifoBatch{},
                                      sim::Engine::Aggregated, sim::StopRule::at_time(1e6), 0,
                                      rng, false);
      const auto pmf = sim::time_average_pmf(path, 0.0, 20);
      const auto table = analytic::StationaryTailTable::build(21, rho, arrival);
      double cum = 0.0;
      double sup = 0.0;
      for (int k = 1; k <= 20; ++k) {
        cum += pmf[static_cast<std::size_t>(k - 1)];
        sup = std::max(sup, std::abs((1.0 - cum) - table.tail(k)));
      }
      check.expect(sup < 0.005, name + " rho=" + fmt(rho) + ": sup tail error " + fmt(sup));
    }
  }

  // Poisson product form.
  const ArrivalModel poisson = ArrivalModel::exponential(1.0);
  for (double rho : {0.5, 1.0, 10.0}) {
    double closed = 1.0;
    const auto table = analytic::StationaryTailTable::build(100, rho, poisson);
    for (int k = 1; k <= 100; ++k) {
      closed *= rho / (rho + static_cast<double>(k));
      const double rel = std::abs(table.tail(k) - closed) / closed;
      check.expect(rel <= 1e-12, "poisson product rho=" + fmt(rho) + " k=" + std::to_string(k) +
                                     ": rel " + fmt(rel));
    }
  }

  // Reconstruction through the mean cycle and level-arrival means.
  for (const auto& [name, arrival] : all_arrivals()) {
    for (double rho : {0.5, 1.0, 10.0, 100.0}) {
      const double mu = lambda / rho;
      const double cycle = analytic::mean_cycle(rho, lambda, arrival);
      double level_product = 1.0;
      for (int k = 1; k <= 50; ++k) {
        if (k >= 2) level_product *= analytic::mean_level_arrivals(k, rho, arrival);
        const double rebuilt = (1.0 / (static_cast<double>(k) * mu)) / cycle * level_product;
        const double direct = analytic::stationary_tail(k, rho, arrival);
        if (direct < 1e-280) break;  // past double underflow; nothing left to compare
        const double rel = std::abs(rebuilt - direct) / direct;
        check.expect(rel <= 1e-10, name + " rho=" + fmt(rho) + " k=" + std::to_string(k) +
                                       ": reconstruction rel " + fmt(rel));
      }
    }
  }

  res.pass = check.pass;
  res.detail = check.pass ? "sim tails < 0.005, product identities at 1e-12/1e-10" : check.worst;
  return res;
}

// ---------------------------------------------------------------------------
// 4. Factorial-moment recursion against direct summation and simulation.
CriterionResult criterion_moments(const AcceptanceOptions& opt) {
  CriterionResult res{4, "factorial-moment recursion", false, "", 0.0};
  Check check;
  const double rho = 1.0;
  const ArrivalModel arrival = ArrivalModel::exponential(1.0);
  const auto mean = analytic::mean_stationary(rho, arrival, 1e-14);
  const auto moments = analytic::factorial_moments(6, rho, mean.value, mean.truncation_bound);

  // Closed forms at rho = 1.
  const double e = std::numbers::e;
  check.expect(std::abs(moments.m[1] - (e - 2.0)) < 1e-12, "m1 vs e-2");
  check.expect(std::abs(moments.m[2] - 2.0 * (3.0 - e)) < 1e-12, "m2 vs 2(3-e)");
  check.expect(std::abs(moments.m[3] - 3.0 * (3.0 * e - 8.0)) < 1e-12, "m3 vs 3(3e-8)");

  // Direct summation over the stationary pmf.
  const auto table = analytic::StationaryTailTable::build(171, rho, arrival);
  double direct2 = 0.0, direct3 = 0.0;
  for (int k = 2; k <= 170; ++k) {
    const double p = table.pmf(k);
    const double kk = static_cast<double>(k);
    direct2 += kk * (kk - 1.0) * p;
    if (k >= 3) direct3 += kk * (kk - 1.0) * (kk - 2.0) * p;
  }
  check.expect(std::abs(moments.m[2] - direct2) < 1e-8,
               "m2 recursion vs summation: " + fmt(std::abs(moments.m[2] - direct2)));
  check.expect(std::abs(moments.m[3] - direct3) < 1e-8,
               "m3 recursion vs summation: " + fmt(std::abs(moments.m[3] - direct3)));

  // Batch-mean estimates from one long run.
  {
    RngStream rng(opt.seed, 4 * kStreamBlock);
    const double horizon = 2e5;
    const double burn = 1e3;
    const int batches = 100;
    const auto path = sim::simulate(ModelParams(1.0, 1.0), arrival, FifoBatch{},
                                    sim::Engine::Aggregated, sim::StopRule::at_time(horizon), 0,
                                    rng, false);
    const double batch_len = (horizon - burn) / batches;
    std::vector<double> f2(batches, 0.0), f3(batches, 0.0);
    int level = path.q0;
    double seg_start = 0.0;
    auto account = [&](double seg_end) {
      double lo = std::max(seg_start, burn);
      const double hi = std::min(seg_end, horizon);
      while (lo < hi) {
        const int b = std::min(batches - 1, static_cast<int>((lo - burn) / batch_len));
        const double edge = std::min(hi, burn + (b + 1) * batch_len);
        const double w = edge - lo;
        const double kk = level;
        f2[static_cast<std::size_t>(b)] += w * kk * (kk - 1.0);
        f3[static_cast<std::size_t>(b)] += w * kk * (kk - 1.0) * (kk - 2.0);
        lo = edge;
      }
    };
    for (std::size_t i = 0; i < path.step_times.size(); ++i) {
      account(path.step_times[i]);
      seg_start = path.step_times[i];
      level = path.step_sizes[i];
    }
    account(horizon);
    for (int b = 0; b < batches; ++b) {
      f2[static_cast<std::size_t>(b)] /= batch_len;
      f3[static_cast<std::size_t>(b)] /= batch_len;
    }
    const auto s2 = stats::summarize(f2);
    const auto s3 = stats::summarize(f3);
    check.expect(std::abs(s2.mean - moments.m[2]) < 3.0 * s2.stderror,
                 "empirical m2 dev " + fmt(std::abs(s2.mean - moments.m[2])) + " > 3se " +
                     fmt(3.0 * s2.stderror));
    check.expect(std::abs(s3.mean - moments.m[3]) < 3.0 * s3.stderror,
                 "empirical m3 dev " + fmt(std::abs(s3.mean - moments.m[3])) + " > 3se " +
                     fmt(3.0 * s3.stderror));
  }

  res.pass = check.pass;
  res.detail = check.pass
                   ? "m2=" + fmt(moments.m[2]) + ", m3=" + fmt(moments.m[3]) +
                         " match summation to 1e-8 and simulation to 3se"
                   : check.worst;
  return res;
}

// ---------------------------------------------------------------------------
// 5. Transient recursion: closed-form p0, row sums, long-time limit, and a
//    simulated marginal.
CriterionResult criterion_transient(const AcceptanceOptions& opt) {
  CriterionResult res{5, "transient distribution recursion", false, "", 0.0};
  Check check;
  const double lambda = 1.0, mu = 1.0;
  const int k_max = std::max(150, analytic::required_k_max(50.0, lambda, 0));
  const auto table = analytic::CoefficientTable::build(k_max, {1.0}, lambda, mu);

  for (double t : {0.0, 0.5, 5.0}) {
    const auto pmf = table.evaluate(t);
    const double expected = 0.5 + 0.5 * std::exp(-2.0 * mu * t);
    check.expect(std::abs(pmf[0] - expected) < 1e-10,
                 "p0(" + fmt(t) + ") dev " + fmt(std::abs(pmf[0] - expected)));
  }
  for (double t : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0}) {
    const auto pmf = table.evaluate(t);
    double sum = 0.0;
    for (double p : pmf) sum += p;
    check.expect(std::abs(sum - 1.0) < 1e-9, "row sum at t=" + fmt(t) + ": " + fmt(sum));
  }
  {
    const auto pmf = table.evaluate(50.0);
    const auto stat = analytic::StationaryTailTable::build(k_max + 1, lambda / mu,
                                                           ArrivalModel::exponential(lambda));
    for (int k = 0; k <= k_max; ++k) {
      const double dev = std::abs(pmf[static_cast<std::size_t>(k)] - stat.pmf(k));
      check.expect(dev < 1e-10, "t=50 pmf vs stationary at k=" + std::to_string(k));
    }
  }
  {
    const int n = 100'000;
    const auto sizes = sim::replicate<int>(
        n, opt.seed, 5 * kStreamBlock,
        [&](int, RngStream& rng) {
          const auto path = sim::simulate(ModelParams(lambda, mu),
                                          ArrivalModel::exponential(lambda), FifoBatch{},
                                          sim::Engine::Aggregated, sim::StopRule::at_time(1.0), 0,
                                          rng, false);
          return path.size_at(1.0);
        },
        opt.threads);
    const auto pmf = table.evaluate(1.0);
    std::vector<double> counts(pmf.size(), 0.0);
    for (int q : sizes)
      if (q >= 0 && q < static_cast<int>(counts.size())) counts[static_cast<std::size_t>(q)] += 1.0;
    for (int k = 0; k < 10; ++k) {
      const double p = pmf[static_cast<std::size_t>(k)];
      if (p * n < 25.0) continue;
      const double phat = counts[static_cast<std::size_t>(k)] / n;
      const double sigma = std::sqrt(p * (1.0 - p) / n);
      check.expect(std::abs(phat - p) < 3.0 * sigma,
                   "sim pmf at k=" + std::to_string(k) + ": dev " + fmt(std::abs(phat - p)) +
                       " > 3sigma " + fmt(3.0 * sigma));
    }
  }

  res.pass = check.pass;
  res.detail = check.pass ? "p0 closed form 1e-10, row sums 1e-9, t=50 limit 1e-10, sim 3sigma"
                          : check.worst;
  return res;
}

// ---------------------------------------------------------------------------
// 6. Rayleigh limit of the stationary law.
CriterionResult criterion_rayleigh(const AcceptanceOptions&) {
  CriterionResult res{6, "Rayleigh limit of the stationary law", false, "", 0.0};
  Check check;
  const std::vector<double> rho_list{1e2, 1e3, 1e4, 1e5};
  for (const auto& [name, arrival] : acceptance_arrivals()) {
    const auto report = stationary_rayleigh_study(rho_list, arrival, 0.01, 1e6, 0.01);
    check.expect(report.all_pass(), name + ": rayleigh study row failed");
  }
  for (int n = 0; n <= 4; ++n) {
    const double quad = stats::integrate(
        [n](double x) { return std::pow(x, n) * analytic::rayleigh_density(x); }, 0.0, 12.0,
        1 << 15);
    const double dev = std::abs(quad - analytic::rayleigh_moment(n));
    check.expect(dev < 1e-10, "moment n=" + std::to_string(n) + ": quadrature dev " + fmt(dev));
  }
  res.pass = check.pass;
  res.detail = check.pass ? "sup distances decreasing, < 0.01 at rho=1e5; mean and moments match"
                          : check.worst;
  return res;
}

// ---------------------------------------------------------------------------
// 7. Fluid jump laws, ledger identity, and non-explosiveness.
CriterionResult criterion_fluid_laws(const AcceptanceOptions& opt) {
  CriterionResult res{7, "fluid-limit jump laws", false, "", 0.0};
  Check check;
  const std::size_t n = 100'000;
  const double ks_crit = stats::ks_critical_value(n, kAlpha);

  // Pre-jump law from fixed levels, read off simulated paths started there.
  {
    RngStream rng(opt.seed, 7 * kStreamBlock);
    for (double x : {0.0, 1.0, 2.0}) {
      std::vector<double> pre(n);
      for (auto& y : pre) {
        const auto path = fluid::fluid_simulate(x, 1.0, 20.0 + x, CutLaw::uniform(), rng);
        y = path.jumps.at(0).pre;
      }
      const double d = stats::ks_statistic(
          pre, [x](double y) { return y <= x ? 0.0 : 1.0 - std::exp(0.5 * (x * x - y * y)); });
      check.expect(d < ks_crit, "jump law from x=" + fmt(x) + ": KS " + fmt(d));
    }
  }

  // Cut-off uniformity and the ledger identity along one long path.
  {
    RngStream rng(opt.seed, 7 * kStreamBlock + 1);
    const double lambda = 1.0;
    const auto path = fluid::fluid_simulate(0.0, lambda, 9e4, CutLaw::uniform(), rng);
    check.expect(path.jumps.size() >= n, "path produced " + std::to_string(path.jumps.size()) +
                                             " jumps, need " + std::to_string(n));
    if (path.jumps.size() >= n) {
      std::vector<double> ratios(n);
      for (std::size_t i = 0; i < n; ++i) ratios[i] = path.jumps[i].post / path.jumps[i].pre;
      const double d = stats::ks_statistic(
          ratios, [](double u) { return std::clamp(u, 0.0, 1.0); });
      check.expect(d < ks_crit, "cut-off uniformity: KS " + fmt(d));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double prev_tau = 0.0, prev_post = 0.0;
    for (const auto& j : path.jumps) {
      const double lhs = j.tau - prev_tau;
      const double rhs = (j.pre - prev_post) / lambda;
      const double tol = 8.0 * eps * std::max(1.0, std::abs(j.tau));
      check.expect(std::abs(lhs - rhs) <= tol, "ledger identity off by " + fmt(lhs - rhs));
      prev_tau = j.tau;
      prev_post = j.post;
    }
  }

  // Jump counts per horizon: finite and consistent with the jump rate.
  std::string counts;
  {
    for (double horizon : {1e2, 1e3, 1e4}) {
      RngStream rng(opt.seed, 7 * kStreamBlock + 2);
      const auto path = fluid::fluid_simulate(0.0, 1.0, horizon, CutLaw::uniform(), rng);
      const double count = static_cast<double>(path.jumps.size());
      const double expected = horizon / std::sqrt(std::numbers::pi / 2.0);
      check.expect(count > 0.5 * expected && count < 2.0 * expected,
                   "jump count " + fmt(count) + " vs expected " + fmt(expected));
      counts += (counts.empty() ? "" : ", ") + std::string("T=") + fmt(horizon) + ": " +
                std::to_string(path.jumps.size());
    }
  }

  res.pass = check.pass;
  res.detail = check.pass ? "jump laws pass KS; ledger exact; jumps per horizon " + counts
                          : check.worst;
  return res;
}

// ---------------------------------------------------------------------------
// 8. Stationary fluid limit: embedded means, path occupation, occupation
//    ratio, density equation residual.
CriterionResult criterion_fluid_stationarity(const AcceptanceOptions& opt) {
  CriterionResult res{8, "stationary fluid limit", false, "", 0.0};
  Check check;
  RngStream rng(opt.seed, 8 * kStreamBlock);
  const auto samples = fluid::embedded_stationary_sampler(1'000'000, 1e-12, rng);

  std::vector<double> xis(samples.size()), etas(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    xis[i] = samples[i].xi;
    etas[i] = samples[i].eta;
  }
  const auto sx = stats::summarize(xis);
  const auto se = stats::summarize(etas);
  const double mean_xi = std::sqrt(2.0 / std::numbers::pi);
  check.expect(std::abs(sx.mean - mean_xi) < 3.0 * sx.stderror,
               "mean xi dev " + fmt(std::abs(sx.mean - mean_xi)));
  check.expect(std::abs(se.mean - 2.0 * mean_xi) < 3.0 * se.stderror,
               "mean eta dev " + fmt(std::abs(se.mean - 2.0 * mean_xi)));

  {
    RngStream path_rng(opt.seed, 8 * kStreamBlock + 1);
    const auto path = fluid::fluid_simulate(0.0, 1.0, 1e4, CutLaw::uniform(), path_rng);
    double sup = 0.0;
    for (int i = 1; i <= 30; ++i) {
      const double x = 0.1 * i;
      sup = std::max(sup, std::abs(path.time_average_tail(x) - analytic::rayleigh_tail(x)));
    }
    check.expect(sup < 0.01, "path occupation sup error " + fmt(sup));
  }

  {
    struct Case {
      const char* name;
      std::function<double(double)> f;
      double target;
    };
    const Case cases[] = {
        {"f=1", [](double) { return 1.0; }, 1.0},
        {"f=u", [](double u) { return u; }, std::sqrt(std::numbers::pi / 2.0)},
        {"f=u^2", [](double u) { return u * u; }, 2.0},
    };
    for (const auto& c : cases) {
      const auto ratio = fluid::occupation_ratio(c.f, samples);
      check.expect(std::abs(ratio.expected - c.target) < 1e-9,
                   std::string(c.name) + ": quadrature side dev " +
                       fmt(std::abs(ratio.expected - c.target)));
      const double tol = std::max(3.0 * ratio.empirical_stderr, 1e-10);
      check.expect(std::abs(ratio.empirical - c.target) < tol,
                   std::string(c.name) + ": empirical dev " +
                       fmt(std::abs(ratio.empirical - c.target)) + " > " + fmt(tol));
    }
  }

  for (double x : {0.5, 1.0, 2.0}) {
    const double r = std::abs(fluid::ode_residual(x, 1e-4));
    check.expect(r < 1e-6, "ode residual at x=" + fmt(x) + ": " + fmt(r));
  }

  res.pass = check.pass;
  res.detail = check.pass
                   ? "means within 3se; occupation sup < 0.01; ratios match; residual < 1e-6"
                   : check.worst;
  return res;
}

// ---------------------------------------------------------------------------
// 9. Pre-limit to fluid convergence of the first departure cycle.
CriterionResult criterion_prelimit_convergence(const AcceptanceOptions& opt) {
  CriterionResult res{9, "pre-limit to fluid convergence", false, "", 0.0};
  Check check;
  const double rho = 1e4;
  ScalingConfig config;
  config.lambda = 1.0;
  config.replications = 1000;
  config.seed = opt.seed;
  config.threads = opt.threads;

  const auto freq = single_departure_frequency(rho, 5, config, 9 * kStreamBlock);
  for (std::size_t l = 0; l < freq.size(); ++l)
    check.expect(freq[l] > 0.95,
                 "P{single departure} at l=" + std::to_string(l + 1) + ": " + fmt(freq[l]));

  const auto report = embedded_convergence(rho, 1, config, 9 * kStreamBlock + 2'000'000);
  for (const auto& row : report.rows)
    check.expect(row.pass, row.statistic + ": " + fmt(row.value) + " vs " + fmt(row.threshold));

  res.pass = check.pass;
  res.detail = check.pass ? "P{D_l} > 0.95 for l<=5; first-cycle KS and tail checks pass"
                          : check.worst;
  return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            std::ostream* progress) {
  using Runner = CriterionResult (*)(const AcceptanceOptions&);
  const Runner runners[] = {
      criterion_busy_period,      criterion_discipline_equivalence,
      criterion_stationary_formula, criterion_moments,
      criterion_transient,        criterion_rayleigh,
      criterion_fluid_laws,       criterion_fluid_stationarity,
      criterion_prelimit_convergence,
  };

  std::vector<CriterionResult> results;
  for (int id = 1; id <= 9; ++id) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), id) == options.only.end())
      continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r = runners[id - 1](options);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (progress) {
      (*progress) << "[" << r.id << "/9] " << (r.pass ? "PASS" : "FAIL") << "  " << r.name
                  << " (" << r.detail << ") [" << fmt(r.seconds) << "s]\n";
      progress->flush();
    }
    results.push_back(std::move(r));
  }
  return results;
}

ComparisonReport acceptance_report(const std::vector<CriterionResult>& results,
                                   std::uint64_t seed) {
  ComparisonReport report;
  for (const auto& r : results) {
    StatRow row;
    row.study = "acceptance";
    row.statistic = "criterion_" + std::to_string(r.id);
    row.rho = std::numeric_limits<double>::quiet_NaN();
    row.value = r.pass ? 1.0 : 0.0;
    row.threshold = 1.0;
    row.pass = r.pass;
    row.seed = seed;
    report.add(std::move(row));
  }
  return report;
}

}  // namespace batchq::experiments
