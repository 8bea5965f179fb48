#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <limits>
#include <numbers>

#include "batchq/analytic/rayleigh.hpp"
#include "batchq/fluid/path.hpp"
#include "batchq/fluid/stationary.hpp"
#include "batchq/stats.hpp"

using namespace batchq;
using namespace batchq::fluid;

TEST_CASE("fluid value on a hand-built ledger") {
  FluidPath path;
  path.lambda = 2.0;
  path.xi0 = 1.0;
  path.horizon = 10.0;
  path.jumps = {{2.0, 5.0, 3.0}, {4.0, 7.0, 1.0}};
  CHECK(path.value(0.0) == doctest::Approx(1.0));
  CHECK(path.value(1.0) == doctest::Approx(3.0));      // 1 + 2*1
  CHECK(path.value(2.0) == doctest::Approx(3.0));      // right-continuous: post-jump level
  CHECK(path.value(3.0) == doctest::Approx(5.0));      // 3 + 2*1
  CHECK(path.value(4.0) == doctest::Approx(1.0));
  CHECK(path.value(5.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS((void)path.value(11.0), std::out_of_range);
}

TEST_CASE("time average tail on a hand-built ledger") {
  FluidPath path;
  path.lambda = 1.0;
  path.xi0 = 0.0;
  path.horizon = 3.0;
  path.jumps = {{2.0, 2.0, 1.0}};
  // above 0.5: (0.5,2) then all of (2,3) -> 2.5/3
  CHECK(path.time_average_tail(0.5) == doctest::Approx(2.5 / 3.0).epsilon(1e-12));
}

TEST_CASE("fluid replay is deterministic") {
  RngStream a(21, 0), b(21, 0);
  const auto pa = fluid_simulate(0.0, 1.0, 100.0, CutLaw::uniform(), a);
  const auto pb = fluid_simulate(0.0, 1.0, 100.0, CutLaw::uniform(), b);
  REQUIRE(pa.jumps.size() == pb.jumps.size());
  for (std::size_t i = 0; i < pa.jumps.size(); ++i) {
    CHECK(pa.jumps[i].tau == pb.jumps[i].tau);
    CHECK(pa.jumps[i].pre == pb.jumps[i].pre);
    CHECK(pa.jumps[i].post == pb.jumps[i].post);
  }
}

TEST_CASE("ledger identity holds to machine precision") {
  RngStream rng(22, 0);
  const auto path = fluid_simulate(0.5, 2.0, 1000.0, CutLaw::uniform(), rng);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double prev_tau = 0.0, prev_post = 0.5;
  for (const auto& j : path.jumps) {
    CHECK(j.pre > j.post);
    CHECK(j.post > 0.0);
    const double lhs = j.tau - prev_tau;
    const double rhs = (j.pre - prev_post) / path.lambda;
    CHECK(std::abs(lhs - rhs) <= 8.0 * eps * std::max(1.0, std::abs(j.tau)));
    prev_tau = j.tau;
    prev_post = j.post;
  }
}

TEST_CASE("jump counts grow with the horizon and match the jump rate") {
  std::size_t prev = 0;
  for (double horizon : {10.0, 100.0, 1000.0}) {
    RngStream rng(23, 0);  // same stream: nested horizons share the path prefix
    const auto path = fluid_simulate(0.0, 1.0, horizon, CutLaw::uniform(), rng);
    CHECK(path.jumps.size() >= prev);
    prev = path.jumps.size();
    const double expected = horizon / std::sqrt(std::numbers::pi / 2.0);
    CHECK(static_cast<double>(path.jumps.size()) > 0.4 * expected);
    CHECK(static_cast<double>(path.jumps.size()) < 2.5 * expected);
  }
}

TEST_CASE("pre-jump law from level zero is rayleigh") {
  RngStream rng(24, 0);
  std::vector<double> pre(100000);
  for (auto& y : pre) y = std::sqrt(2.0 * rng.exponential(1.0));
  const double d = stats::ks_statistic(pre, [](double y) { return 1.0 - std::exp(-0.5 * y * y); });
  CHECK(d < stats::ks_critical_value(pre.size(), 0.01));
}

TEST_CASE("cut ratios follow the configured law") {
  RngStream rng(25, 0);
  const auto path = fluid_simulate(0.0, 1.0, 9000.0, CutLaw::beta(2.0, 2.0), rng);
  REQUIRE(path.jumps.size() > 5000);
  std::vector<double> ratios;
  ratios.reserve(path.jumps.size());
  for (const auto& j : path.jumps) ratios.push_back(j.post / j.pre);
  // Beta(2,2) cdf is 3u^2 - 2u^3
  const double d = stats::ks_statistic(ratios, [](double u) { return 3.0 * u * u - 2.0 * u * u * u; });
  CHECK(d < stats::ks_critical_value(ratios.size(), 0.01));
}

TEST_CASE("stationary densities: normalization, ratio, value at zero") {
  CHECK(stats::integrate([](double x) { return stationary_density_xi(x); }, 0.0, 12.0) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(stats::integrate([](double y) { return stationary_density_eta(y); }, 0.0, 12.0) ==
        doctest::Approx(1.0).epsilon(1e-10));
  for (double y : {0.3, 1.0, 2.5})
    CHECK(stationary_density_eta(y) / stationary_density_xi(y) ==
          doctest::Approx(y * y).epsilon(1e-12));
  CHECK(stationary_density_xi(0.0) == doctest::Approx(0.7978845608028654).epsilon(1e-14));
}

TEST_CASE("series truncation depth matches the remainder bound") {
  CHECK(embedded_series_terms(1e-12) == 26);
  CHECK(embedded_series_terms(1e-6) == 13);
}

TEST_CASE("embedded sampler matches the stationary marginals") {
  RngStream rng(26, 0);
  const auto samples = embedded_stationary_sampler(1'000'000, 1e-12, rng);
  std::vector<double> xi(samples.size()), eta(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(samples[i].xi < samples[i].eta);
    CHECK(samples[i].xi > 0.0);
    xi[i] = samples[i].xi;
    eta[i] = samples[i].eta;
  }
  const auto sx = stats::summarize(xi);
  const auto se = stats::summarize(eta);
  const double root2pi = std::sqrt(2.0 / std::numbers::pi);
  CHECK(std::abs(sx.mean - root2pi) < 3.0 * sx.stderror);
  CHECK(std::abs(se.mean - 2.0 * root2pi) < 3.0 * se.stderror);

  // KS of xi against its stationary cdf erf(x/sqrt(2)).
  const double d =
      stats::ks_statistic(xi, [](double x) { return std::erf(x / std::numbers::sqrt2); });
  CHECK(d < stats::ks_critical_value(xi.size(), 0.01));
}

TEST_CASE("embedded chain run from a far level mixes into the sampler's law") {
  RngStream chain_rng(27, 0);
  std::vector<double> chain;
  chain.reserve(99000);
  double level = 5.0;
  for (int n = 0; n < 100000; ++n) {
    const double pre = std::sqrt(level * level + 2.0 * chain_rng.exponential(1.0));
    level = chain_rng.next_open() * pre;
    if (n >= 1000) chain.push_back(level);
  }
  RngStream samp_rng(27, 1);
  const auto samples = embedded_stationary_sampler(100000, 1e-12, samp_rng);
  std::vector<double> xi(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) xi[i] = samples[i].xi;
  const double d = stats::ks_two_sample(chain, xi);
  CHECK(d < stats::ks_two_sample_critical(chain.size(), xi.size(), 0.01));
}

TEST_CASE("occupation ratio for the three reference functionals") {
  RngStream rng(28, 0);
  const auto samples = embedded_stationary_sampler(200000, 1e-12, rng);

  const auto one = occupation_ratio([](double) { return 1.0; }, samples);
  CHECK(one.expected == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(one.empirical == doctest::Approx(1.0).epsilon(1e-12));

  const auto linear = occupation_ratio([](double u) { return u; }, samples);
  const double target1 = std::sqrt(std::numbers::pi / 2.0);
  CHECK(linear.expected == doctest::Approx(target1).epsilon(1e-9));
  CHECK(std::abs(linear.empirical - target1) < 3.0 * linear.empirical_stderr);

  const auto square = occupation_ratio([](double u) { return u * u; }, samples);
  CHECK(square.expected == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(std::abs(square.empirical - 2.0) < 3.0 * square.empirical_stderr);
}

TEST_CASE("long-run path occupation matches the rayleigh law") {
  RngStream rng(29, 0);
  const auto path = fluid_simulate(0.0, 1.0, 10000.0, CutLaw::uniform(), rng);
  double sup = 0.0;
  for (int i = 1; i <= 30; ++i) {
    const double x = 0.1 * i;
    sup = std::max(sup, std::abs(path.time_average_tail(x) - analytic::rayleigh_tail(x)));
  }
  CHECK(sup < 0.01);

  // time_average_functional agrees with the exact tail computation for an
  // indicator-like smooth functional: use f(u) = u and the known mean.
  const double mean = time_average_functional(path, [](double u) { return u; });
  CHECK(std::abs(mean - std::sqrt(std::numbers::pi / 2.0)) < 0.05);
}

TEST_CASE("density equation residual is small and second order") {
  for (double x : {0.5, 1.0, 2.0}) CHECK(std::abs(ode_residual(x, 1e-4)) < 1e-6);
  // In the truncation-dominated regime halving h quarters the residual.
  const double r1 = std::abs(ode_residual(1.0, 0.02));
  const double r2 = std::abs(ode_residual(1.0, 0.01));
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.2));
  CHECK_THROWS_AS((void)ode_residual(0.5, 0.6), std::invalid_argument);
}

TEST_CASE("fluid simulate input validation") {
  RngStream rng(30, 0);
  CHECK_THROWS_AS((void)fluid_simulate(-1.0, 1.0, 10.0, CutLaw::uniform(), rng),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)fluid_simulate(0.0, 0.0, 10.0, CutLaw::uniform(), rng),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)fluid_simulate(0.0, 1.0, -1.0, CutLaw::uniform(), rng),
                  std::invalid_argument);
}
