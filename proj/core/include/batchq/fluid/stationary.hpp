#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "batchq/fluid/path.hpp"
#include "batchq/rng.hpp"

namespace batchq::fluid {

/// One draw from the stationary law of the embedded post-/pre-jump chain:
/// 0 < xi < eta.
struct EmbeddedSample {
  double xi = 0.0;
  double eta = 0.0;
};

/// Stationary marginal densities of the embedded chain:
/// f_xi(x) = sqrt(2/pi) e^{-x^2/2},  f_eta(y) = sqrt(2/pi) y^2 e^{-y^2/2}.
double stationary_density_xi(double x);
double stationary_density_eta(double y);

/// Exact stationary draws. xi^2 is sampled from the series
/// sum_{n>=1} 2 E_n prod_{i<=n} U_i^2 implied by the post-jump recursion,
/// truncated at K terms where the expected remainder 3^{-K} falls below tol
/// (tol = 1e-12 gives K = 26); eta is then sqrt(xi^2 + 2E) by the jump law.
std::vector<EmbeddedSample> embedded_stationary_sampler(std::size_t n_samples, double tol,
                                                        RngStream& rng);

/// Series truncation depth for a given tolerance.
int embedded_series_terms(double tol);

/// Occupation-ratio identity: the time-stationary mean of f equals
/// E int_xi^eta f(u) du / E(eta - xi).
///
/// `expected` integrates f against the Rayleigh density by quadrature;
/// `empirical` is the ratio estimator over embedded samples (per-sample
/// integrals by Simpson), with a delta-method standard error.
struct OccupationRatio {
  double expected = 0.0;
  double empirical = 0.0;
  double empirical_stderr = 0.0;
};
OccupationRatio occupation_ratio(const std::function<double(double)>& f,
                                 std::span<const EmbeddedSample> samples,
                                 int panels_per_sample = 32);

/// Time-average of f along a fluid path (per-segment Simpson).
double time_average_functional(const FluidPath& path, const std::function<double(double)>& f,
                               double burn_in = 0.0, int panels_per_segment = 16);

/// Central-difference residual of f_xi in f'' + x f' + f = 0 at x with step
/// h (0 < h < x); O(h^2) when the density solves the equation.
double ode_residual(double x, double h);

}  // namespace batchq::fluid
