#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace batchq::stats {

/// sup_x |F_n(x) - F(x)| against a theoretical cdf. Sorts a copy.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Two-sample sup-distance between empirical cdfs. Sorts copies.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic one-sample critical value c(alpha)/sqrt(n),
/// c(alpha) = sqrt(-ln(alpha/2)/2).
double ks_critical_value(std::size_t n, double alpha);

/// Two-sample critical value c(alpha) * sqrt((n+m)/(n*m)).
double ks_two_sample_critical(std::size_t n, std::size_t m, double alpha);

/// Total variation distance between two finite distributions on the same
/// support: 0.5 * sum |p_i - q_i|.
double total_variation(std::span<const double> p, std::span<const double> q);

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double stderror = 0.0;
};
SampleSummary summarize(std::span<const double> xs);

/// Ratio estimator mean(num)/mean(den) with a delta-method standard error.
struct RatioEstimate {
  double value = 0.0;
  double stderror = 0.0;
};
RatioEstimate ratio_estimate(std::span<const double> num, std::span<const double> den);

/// Pearson statistic sum (obs - exp)^2 / exp.
double chi_square_statistic(std::span<const std::uint64_t> observed,
                            std::span<const double> expected);

/// Upper critical value of chi-square(df) via the Wilson-Hilferty cube
/// approximation.
double chi_square_critical(double df, double alpha);

/// Standard normal quantile (Acklam's rational approximation).
double normal_quantile(double p);

/// Composite Simpson rule on [a,b] with an even number of panels.
double integrate(const std::function<double(double)>& f, double a, double b, int panels = 1 << 14);

/// P{Poisson(nu) > m}.
double poisson_tail(double nu, long m);

}  // namespace batchq::stats
