#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <vector>

#include "batchq/arrival.hpp"
#include "batchq/discipline.hpp"
#include "batchq/params.hpp"
#include "batchq/rng.hpp"
#include "batchq/stats.hpp"

using namespace batchq;

namespace {

std::vector<ArrivalModel> all_models() {
  return {
      ArrivalModel::exponential(1.0),
      ArrivalModel::deterministic(2.0),
      ArrivalModel::uniform_interval(1.0, 3.0),
      ArrivalModel::gamma(2.0, 2.0),
  };
}

}  // namespace

TEST_CASE("rng replay is bit-exact and streams differ") {
  RngStream a(42, 7);
  RngStream b(42, 7);
  RngStream c(42, 8);
  bool same = true, differ = false;
  for (int i = 0; i < 1000; ++i) {
    const auto va = a.next_u64();
    same = same && va == b.next_u64();
    differ = differ || va != c.next_u64();
  }
  CHECK(same);
  CHECK(differ);
}

TEST_CASE("rng output is pinned across releases") {
  // Frozen outputs of the documented generator; a change here breaks every
  // seeded result users may have recorded.
  RngStream a(42, 54);
  const std::uint64_t expected[] = {9705778491962043240ULL, 1370407407632858425ULL,
                                    11774395822783136600ULL, 17944889938176486912ULL};
  for (std::uint64_t e : expected) CHECK(a.next_u64() == e);
  RngStream b(0, 0);
  CHECK(b.next_u64() == 15347903478529588745ULL);
  RngStream c(42, 54);
  CHECK(c.next_double() == 0.52615130633241647);
  CHECK(c.next_open() == 0.074289934427288651);
  RngStream d(7, 9);
  CHECK(d.exponential(2.0) == 0.51381606628705989);
}

TEST_CASE("rng double ranges") {
  RngStream rng(1, 1);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = rng.next_open();
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("rng bounded draws cover the range uniformly enough") {
  RngStream rng(3, 5);
  std::vector<std::uint64_t> counts(10, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[rng.next_below(10)];
  std::vector<double> expected(10, n / 10.0);
  const double stat = stats::chi_square_statistic(counts, expected);
  CHECK(stat < stats::chi_square_critical(9, 0.01));
}

TEST_CASE("exponential and gamma samples are positive with the right mean") {
  RngStream rng(11, 0);
  const int n = 200000;
  double se = 0.0, sg = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = rng.exponential(2.0);
    const double g = rng.gamma(3.0, 1.5);
    CHECK(e > 0.0);
    CHECK(g > 0.0);
    se += e;
    sg += g;
  }
  CHECK(std::abs(se / n - 0.5) < 3.0 * 0.5 / std::sqrt(n));
  CHECK(std::abs(sg / n - 2.0) < 3.0 * (2.0 / std::sqrt(3.0)) / std::sqrt(n));
}

TEST_CASE("deterministic inter-arrival sampling") {
  RngStream rng(5, 5);
  const auto model = ArrivalModel::deterministic(2.0);
  CHECK(model.sample(rng) == 2.0);
}

TEST_CASE("uniform inter-arrival stays inside its interval") {
  RngStream rng(5, 6);
  const auto model = ArrivalModel::uniform_interval(1.0, 3.0);
  double sum = 0.0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    const double x = model.sample(rng);
    CHECK(x >= 1.0);
    CHECK(x <= 3.0);
    sum += x;
  }
  // sd of U(1,3) is 1/sqrt(3)
  CHECK(std::abs(sum / n - 2.0) < 3.0 / std::sqrt(3.0 * n));
}

TEST_CASE("exponential sample mean over 1e6 draws within 3 standard errors") {
  RngStream rng(5, 7);
  const auto model = ArrivalModel::exponential(1.0);
  double sum = 0.0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) sum += model.sample(rng);
  CHECK(std::abs(sum / n - 1.0) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("normalized samples have mean one for every variant") {
  const int n = 1'000'000;
  std::uint64_t stream = 100;
  for (const auto& model : all_models()) {
    RngStream rng(5, stream++);
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = model.sample_normalized(rng);
      sum += x;
      sumsq += x * x;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(std::max(0.0, sumsq / n - mean * mean));
    CHECK(std::abs(mean - 1.0) < 3.0 * std::max(sd, 1e-9) / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("normalized transform closed forms") {
  const auto exp1 = ArrivalModel::exponential(1.0);
  const auto det = ArrivalModel::deterministic(1.0);
  CHECK(exp1.lst_normalized(1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(det.lst_normalized(2.0) == doctest::Approx(0.1353352832366127).epsilon(1e-14));
  for (const auto& model : all_models()) CHECK(model.lst_normalized(0.0) == 1.0);
}

TEST_CASE("normalized transform is decreasing, in (0,1], complement consistent") {
  const std::vector<double> grid{1e-8, 1e-4, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0};
  for (const auto& model : all_models()) {
    double prev = 1.0;
    for (double s : grid) {
      const double v = model.lst_normalized(s);
      CHECK(v > 0.0);
      CHECK(v < prev);
      CHECK(v + model.lst_normalized_complement(s) == doctest::Approx(1.0).epsilon(1e-13));
      prev = v;
    }
  }
}

TEST_CASE("transform matches Monte Carlo at s in {0.1, 1, 10}") {
  std::uint64_t stream = 500;
  for (const auto& model : all_models()) {
    for (double s : {0.1, 1.0, 10.0}) {
      RngStream rng(13, stream++);
      const int n = 1'000'000;
      long double sum = 0.0, sumsq = 0.0;
      for (int i = 0; i < n; ++i) {
        const double v = std::exp(-s * model.sample_normalized(rng));
        sum += v;
        sumsq += v * v;
      }
      const double mean = static_cast<double>(sum / n);
      const double var = std::max(0.0, static_cast<double>(sumsq / n) - mean * mean);
      const double dev = std::abs(mean - model.lst_normalized(s));
      // absolute floor covers the degenerate deterministic law, where the
      // only spread left is accumulation rounding
      CHECK(dev < 3.0 * std::sqrt(var / n) + 1e-9);
    }
  }
}

TEST_CASE("negative transform argument is rejected") {
  CHECK_THROWS_AS((void)ArrivalModel::exponential(1.0).lst_normalized(-0.1),
                  std::invalid_argument);
}

TEST_CASE("invalid arrival parameters are rejected") {
  CHECK_THROWS_AS(ArrivalModel::exponential(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ArrivalModel::deterministic(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(ArrivalModel::uniform_interval(3.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ArrivalModel::uniform_interval(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ArrivalModel::gamma(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("with_rate rescales the mean exactly") {
  for (const auto& model : all_models()) {
    for (double lambda : {0.1, 1.0, 10.0}) {
      CHECK(model.with_rate(lambda).mean() == doctest::Approx(1.0 / lambda).epsilon(1e-14));
    }
  }
}

TEST_CASE("model params") {
  const ModelParams p = ModelParams::from_rho(2.0, 4.0);
  CHECK(p.mu == doctest::Approx(0.5));
  CHECK(p.rho() == doctest::Approx(4.0));
  CHECK_THROWS_AS(ModelParams(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::from_rho(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("cut laws sample strictly inside (0,1)") {
  RngStream rng(17, 0);
  const CutLaw laws[] = {CutLaw::uniform(), CutLaw::beta(2.0, 5.0)};
  for (const auto& law : laws) {
    for (int i = 0; i < 20000; ++i) {
      const double b = law.sample(rng);
      CHECK(b > 0.0);
      CHECK(b < 1.0);
    }
  }
}

TEST_CASE("normal quantile against published values") {
  CHECK(stats::normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-7));
  CHECK(stats::normal_quantile(0.99) == doctest::Approx(2.326347874).epsilon(1e-7));
  CHECK(stats::normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("ks critical values against published constants") {
  // c(0.01) = 1.6276, c(0.05) = 1.3581
  CHECK(stats::ks_critical_value(1, 0.01) == doctest::Approx(1.6276).epsilon(1e-3));
  CHECK(stats::ks_critical_value(100, 0.05) == doctest::Approx(0.13581).epsilon(1e-3));
}

TEST_CASE("chi-square critical value against published table") {
  CHECK(stats::chi_square_critical(10, 0.01) == doctest::Approx(23.209).epsilon(5e-3));
  CHECK(stats::chi_square_critical(99, 0.01) == doctest::Approx(134.642).epsilon(5e-3));
}

TEST_CASE("ks statistic on a known discrepancy") {
  // Empirical {0.25, 0.75} against U(0,1): D = 0.25.
  const double d = stats::ks_statistic({0.25, 0.75}, [](double x) { return x; });
  CHECK(d == doctest::Approx(0.25).epsilon(1e-12));
  const double d2 = stats::ks_two_sample({1.0, 2.0, 3.0}, {1.5, 2.5, 3.5});
  CHECK(d2 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("simpson integration") {
  CHECK(stats::integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(stats::integrate([](double x) { return x * std::exp(-0.5 * x * x); }, 0.0, 12.0) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("poisson tail against a direct sum") {
  // P{Poisson(5) > 10} = 1 - sum_{j<=10} e^-5 5^j / j!
  double cdf = 0.0, term = std::exp(-5.0);
  for (int j = 0; j <= 10; ++j) {
    cdf += term;
    term *= 5.0 / (j + 1);
  }
  CHECK(stats::poisson_tail(5.0, 10) == doctest::Approx(1.0 - cdf).epsilon(1e-10));
  CHECK(stats::poisson_tail(5.0, -1) == 1.0);
}

TEST_CASE("ratio estimate recovers a constant ratio with zero spread") {
  std::vector<double> num{2.0, 4.0, 6.0};
  std::vector<double> den{1.0, 2.0, 3.0};
  const auto r = stats::ratio_estimate(num, den);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.stderror == doctest::Approx(0.0).epsilon(1e-14));
}
