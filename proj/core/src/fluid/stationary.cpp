#include "batchq/fluid/stationary.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "batchq/analytic/rayleigh.hpp"
#include "batchq/stats.hpp"

namespace batchq::fluid {

double stationary_density_xi(double x) {
  if (x < 0.0) throw std::invalid_argument("stationary_density_xi: x must be >= 0");
  return std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * x * x);
}

double stationary_density_eta(double y) {
  if (y < 0.0) throw std::invalid_argument("stationary_density_eta: y must be >= 0");
  return std::sqrt(2.0 / std::numbers::pi) * y * y * std::exp(-0.5 * y * y);
}

int embedded_series_terms(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("embedded_series_terms: tol must be > 0");
  // Term n has mean 2 E[prod U^2]^n = 2/3^n, so the expected remainder after
  // K terms is 3^{-K}.
  int k = 1;
  double remainder = 1.0 / 3.0;
  while (remainder >= tol) {
    ++k;
    remainder /= 3.0;
    if (k > 4000) break;
  }
  return k;
}

std::vector<EmbeddedSample> embedded_stationary_sampler(std::size_t n_samples, double tol,
                                                        RngStream& rng) {
  const int terms = embedded_series_terms(tol);
  std::vector<EmbeddedSample> out;
  out.reserve(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    // Unrolling x_n^2 = U_n^2 (x_{n-1}^2 + 2 E_n) backward gives
    // xi^2 = sum_{n>=1} 2 E_n prod_{i<=n} U_i^2.
    double xi2 = 0.0;
    double prod = 1.0;
    for (int n = 0; n < terms; ++n) {
      const double u = rng.next_open();
      prod *= u * u;
      xi2 += 2.0 * rng.exponential(1.0) * prod;
    }
    const double xi = std::sqrt(xi2);
    const double eta = std::sqrt(xi2 + 2.0 * rng.exponential(1.0));
    out.push_back(EmbeddedSample{xi, eta});
  }
  return out;
}

OccupationRatio occupation_ratio(const std::function<double(double)>& f,
                                 std::span<const EmbeddedSample> samples,
                                 int panels_per_sample) {
  if (samples.empty()) throw std::invalid_argument("occupation_ratio: no samples");
  OccupationRatio out;
  out.expected = stats::integrate(
      [&](double x) { return f(x) * analytic::rayleigh_density(x); }, 0.0, 12.0, 1 << 14);

  std::vector<double> num(samples.size());
  std::vector<double> den(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    num[i] = stats::integrate(f, samples[i].xi, samples[i].eta, panels_per_sample);
    den[i] = samples[i].eta - samples[i].xi;
  }
  const auto ratio = stats::ratio_estimate(num, den);
  out.empirical = ratio.value;
  out.empirical_stderr = ratio.stderror;
  return out;
}

double time_average_functional(const FluidPath& path, const std::function<double(double)>& f,
                               double burn_in, int panels_per_segment) {
  if (!(path.horizon > burn_in))
    throw std::invalid_argument("time_average_functional: horizon must exceed burn_in");
  double total = 0.0;
  double seg_start = 0.0;
  double seg_level = path.xi0;
  auto account = [&](double seg_end) {
    const double lo = std::max(seg_start, burn_in);
    const double hi = std::min(seg_end, path.horizon);
    if (hi <= lo) return;
    total += stats::integrate(
        [&](double t) { return f(seg_level + path.lambda * (t - seg_start)); }, lo, hi,
        panels_per_segment);
  };
  for (const FluidJump& j : path.jumps) {
    account(j.tau);
    seg_start = j.tau;
    seg_level = j.post;
  }
  account(path.horizon);
  return total / (path.horizon - burn_in);
}

double ode_residual(double x, double h) {
  if (!(h > 0.0) || !(x > h)) throw std::invalid_argument("ode_residual: need x > h > 0");
  const double fm = stationary_density_xi(x - h);
  const double f0 = stationary_density_xi(x);
  const double fp = stationary_density_xi(x + h);
  const double second = (fp - 2.0 * f0 + fm) / (h * h);
  const double first = (fp - fm) / (2.0 * h);
  return second + x * first + f0;
}

}  // namespace batchq::fluid
