#pragma once

#include <vector>

namespace batchq::analytic {

/// Time-dependent queue-length distribution under Poisson arrivals.
///
/// The forward equations admit the closed form
///
///   P{Q(t) = k} = C_{k,0} + sum_{i=1}^{k+1} C_{k,i} e^{-(lambda + i mu) t},
///
/// with the triangular coefficient array built row by row:
///   C_{k,0}           = stationary pmf at k,
///   (k+1-i) C_{k,i}   = rho C_{k-1,i} - sum_{l=i-1}^{k-1} C_{l,i},  1 <= i <= k,
///   C_{k,k+1}         = P{Q(0)=k} - sum_{i=0}^{k} C_{k,i}.
///
/// Rows are accumulated with running column sums, so construction is
/// O(k_max^2); arithmetic runs in long double to damp cancellation.
///
/// The system is truncated at k_max. evaluate() enforces the truncation
/// guard: the initial mass plus a Poisson bound on arrivals over [0,t] must
/// leave < 1e-10 probability above k_max - 20 (see required_k_max).
class CoefficientTable {
 public:
  /// initial_pmf must sum to 1 within 1e-12 and fit below k_max.
  static CoefficientTable build(int k_max, std::vector<double> initial_pmf, double lambda,
                                double mu);

  /// P{Q(t) = k} for k = 0..k_max; values clamped into [0,1].
  std::vector<double> evaluate(double t) const;

  /// Row sum C_{k,0} + sum_i C_{k,i}; equals P{Q(0)=k} by construction.
  double row_sum(int k) const;

  int k_max() const { return k_max_; }
  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  double coefficient(int k, int i) const;
  const std::vector<double>& initial_pmf() const { return initial_pmf_; }
  int initial_support_max() const { return initial_support_max_; }

 private:
  int k_max_ = 0;
  double lambda_ = 0.0;
  double mu_ = 0.0;
  int initial_support_max_ = 0;
  std::vector<double> initial_pmf_;
  std::vector<std::vector<long double>> rows_;
};

/// Smallest k_max such that P{Poisson(lambda t) > k_max - 20 - support_max}
/// < 1e-10, the truncation guard used by evaluate().
int required_k_max(double t, double lambda, int initial_support_max);

/// Convenience wrapper: build a table and evaluate it at one time point.
std::vector<double> transient_pmf(double t, int k_max, const std::vector<double>& initial_pmf,
                                  double lambda, double mu);

}  // namespace batchq::analytic
