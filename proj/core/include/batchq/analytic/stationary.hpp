#pragma once

#include <vector>

#include "batchq/arrival.hpp"

namespace batchq::analytic {

/// P{Q >= k} in steady state for the batch-departure G/M/infinity queue:
///
///   (1 - L(k/rho)) / (k/rho) * prod_{i=1}^{k-1} L(i/rho),
///
/// where L is the normalized inter-arrival Laplace transform. Defined for
/// k >= 1; the k = 0 tail is 1 by convention and is rejected here so that
/// callers reach for the pmf instead.
double stationary_tail(int k, double rho, const ArrivalModel& arrival);

/// P{Q = k} in steady state, k >= 0, by tail differencing.
double stationary_pmf(int k, double rho, const ArrivalModel& arrival);

/// Tails for k = 1..k_max computed in one pass.
struct StationaryTailTable {
  double rho = 0.0;
  int k_max = 0;
  std::vector<double> tails;  // tails[k-1] = P{Q >= k}

  double tail(int k) const;  // tail(0) == 1
  double pmf(int k) const;

  static StationaryTailTable build(int k_max, double rho, const ArrivalModel& arrival);
};

/// E Q in steady state, summed as sum_k P{Q >= k} and truncated once the
/// geometric remainder bound drops below tol. The bound uses the fact that
/// L(i/rho) <= L(k/rho) for i >= k, so the tail sum beyond k is at most
/// prod_{i<=k} L(i/rho) / (1 - L(k/rho)). Truncation is only tested from
/// block length floor(5*sqrt(rho)) onward.
struct MeanStationary {
  double value = 0.0;
  double truncation_bound = 0.0;
  int terms = 0;
};
MeanStationary mean_stationary(double rho, const ArrivalModel& arrival, double tol = 1e-10);

/// Mean regeneration-cycle length 1 / (lambda * (1 - L(1/rho))).
double mean_cycle(double rho, double lambda, const ArrivalModel& arrival);

/// Mean number of level-k arrivals during a level-(k-1) sojourn, k >= 2:
/// L((k-1)/rho) * (1 - L(k/rho)) / (1 - L((k-1)/rho)).
double mean_level_arrivals(int k, double rho, const ArrivalModel& arrival);

}  // namespace batchq::analytic
