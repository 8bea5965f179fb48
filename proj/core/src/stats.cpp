#include "batchq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace batchq::stats {

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0 || alpha <= 0.0 || alpha >= 1.0)
    throw std::invalid_argument("ks_critical_value: bad arguments");
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

double ks_two_sample_critical(std::size_t n, std::size_t m, double alpha) {
  if (n == 0 || m == 0 || alpha <= 0.0 || alpha >= 1.0)
    throw std::invalid_argument("ks_two_sample_critical: bad arguments");
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) * std::sqrt((nn + mm) / (nn * mm));
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

SampleSummary summarize(std::span<const double> xs) {
  SampleSummary out;
  out.n = xs.size();
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  if (xs.size() > 1) {
    out.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    out.stderror = out.stddev / std::sqrt(static_cast<double>(xs.size()));
  }
  return out;
}

RatioEstimate ratio_estimate(std::span<const double> num, std::span<const double> den) {
  if (num.size() != den.size() || num.empty())
    throw std::invalid_argument("ratio_estimate: bad sample sizes");
  const double n = static_cast<double>(num.size());
  double sn = 0.0, sd = 0.0;
  for (std::size_t i = 0; i < num.size(); ++i) {
    sn += num[i];
    sd += den[i];
  }
  const double mean_den = sd / n;
  const double r = sn / sd;
  double ss = 0.0;
  for (std::size_t i = 0; i < num.size(); ++i) {
    const double e = num[i] - r * den[i];
    ss += e * e;
  }
  const double var = ss / (n - 1.0);
  return RatioEstimate{r, std::sqrt(var / n) / mean_den};
}

double chi_square_statistic(std::span<const std::uint64_t> observed,
                            std::span<const double> expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw std::invalid_argument("chi_square_statistic: bad inputs");
  double s = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) throw std::invalid_argument("chi_square_statistic: expected <= 0");
    const double d = static_cast<double>(observed[i]) - expected[i];
    s += d * d / expected[i];
  }
  return s;
}

double chi_square_critical(double df, double alpha) {
  if (!(df > 0.0) || alpha <= 0.0 || alpha >= 1.0)
    throw std::invalid_argument("chi_square_critical: bad arguments");
  const double z = normal_quantile(1.0 - alpha);
  const double t = 1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df));
  return df * t * t * t;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must be in (0,1)");
  // Acklam's rational approximation, |relative error| < 1.15e-9.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double integrate(const std::function<double(double)>& f, double a, double b, int panels) {
  if (!(b > a)) return 0.0;
  if (panels < 2) panels = 2;
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) {
    s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return s * h / 3.0;
}

double poisson_tail(double nu, long m) {
  if (nu < 0.0) throw std::invalid_argument("poisson_tail: nu must be >= 0");
  if (m < 0) return 1.0;
  if (nu == 0.0) return 0.0;
  // Sum P{N = j} for j > m, starting from j = m+1 in log space.
  const long j0 = m + 1;
  double log_term = static_cast<double>(j0) * std::log(nu) - nu - std::lgamma(static_cast<double>(j0) + 1.0);
  double term = std::exp(log_term);
  double sum = 0.0;
  long j = j0;
  while (term > 0.0 && (sum == 0.0 || term > sum * 1e-18)) {
    sum += term;
    ++j;
    term *= nu / static_cast<double>(j);
    if (j > j0 + 10'000'000) break;
  }
  return sum;
}

}  // namespace batchq::stats
