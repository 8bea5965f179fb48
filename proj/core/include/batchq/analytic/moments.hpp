#pragma once

#include <vector>

namespace batchq::analytic {

/// Factorial moments m_n = E[Q(Q-1)...(Q-n+1)] of the stationary queue under
/// Poisson arrivals, generated by
///
///   m_0 = 1,  m_{n+2} = (n+2) (rho m_n - m_{n+1}).
///
/// The subtraction cancels catastrophically for large rho or deep n; the
/// recursion therefore runs in long double and carries a running error
/// estimate per entry. first_insignificant is the smallest index whose error
/// estimate swallows the value (or n_max+1 when all entries are fine).
struct MomentTable {
  double rho = 0.0;
  std::vector<double> m;
  std::vector<double> error;
  int first_insignificant = 0;

  bool significant(int n) const { return n < first_insignificant; }
};

/// m1 is the stationary mean (mean_stationary with exponential arrivals);
/// m1_error optionally carries its truncation bound. Throws when a computed
/// moment turns negative beyond its error estimate.
MomentTable factorial_moments(int n_max, double rho, double m1, double m1_error = 0.0);

}  // namespace batchq::analytic
