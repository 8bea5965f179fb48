#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "batchq/arrival.hpp"
#include "batchq/experiments/report.hpp"
#include "batchq/rng.hpp"

namespace batchq::experiments {

/// Thrown before launching a study whose expected event count exceeds the
/// configured cap.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shared knobs for the scaling studies. lambda stays fixed across rho; the
/// service rate is derived as mu = lambda/rho, and scaled time/space both
/// carry the factor sqrt(rho).
struct ScalingConfig {
  double lambda = 1.0;
  ArrivalModel arrival = ArrivalModel::exponential(1.0);  // rescaled to lambda per run
  double horizon_T = 10.0;                                // scaled horizon
  int replications = 1000;
  std::uint64_t seed = 0;
  double alpha = 0.01;
  std::uint64_t event_cap = 50'000'000;  // per replication
  unsigned threads = 0;                  // 0 = hardware concurrency
};

/// Piecewise-constant scaled trajectory t -> Q(sqrt(rho) t)/sqrt(rho).
struct ScaledPath {
  double rho = 0.0;
  double horizon = 0.0;  // scaled
  std::vector<double> times;
  std::vector<double> levels;
  double initial_level = 0.0;
  // scaled time of the first departure, +inf when none occurred
  double first_drop = 0.0;

  double value_at(double t) const;  // right-continuous
};

/// Expected event count of one replication (arrivals plus at most as many
/// departure events), used by the memory guard.
std::uint64_t expected_event_count(double rho, double lambda, double horizon_T, int q0);

/// One scaled path: simulate at mu = lambda/rho over unscaled horizon
/// sqrt(rho) * horizon_T, then divide times and levels by sqrt(rho).
ScaledPath scaled_path(double rho, const ScalingConfig& config, int q0, RngStream& rng);

/// Fraction of replications whose l-th departure-bearing inter-arrival
/// period contains a single departure instant, for l = 1..l_max. Starts
/// from an empty queue.
std::vector<double> single_departure_frequency(double rho, int l_max,
                                               const ScalingConfig& config,
                                               std::uint64_t stream_base);

/// First-cycle convergence study at one rho, from an empty queue:
/// two-sample KS of the scaled (start level, end level, last departure
/// instant) of the first departure-bearing period against the fluid
/// (pre, post, tau) of the first jump, a one-sample KS of end/start level
/// ratios against Uniform(0,1), and the sup-distance of the scaled start
/// level's empirical tail from its closed-form product.
ComparisonReport embedded_convergence(double rho, int n_jumps, const ScalingConfig& config,
                                      std::uint64_t stream_base,
                                      std::size_t fluid_samples = 100'000);

/// Analytic Rayleigh-limit study: per rho the sup distance (over the grid
/// x = 0.1..3.0) between the stationary tail at ceil(x sqrt(rho)) and
/// e^{-x^2/2}, plus the relative error of mean/sqrt(rho) against
/// sqrt(pi/2). The sup threshold is asserted at the largest rho; a
/// cross-rho row checks that the distances decrease.
ComparisonReport stationary_rayleigh_study(const std::vector<double>& rho_list,
                                           const ArrivalModel& arrival,
                                           double sup_threshold = 0.01,
                                           double mean_rho = 1e6,
                                           double mean_rel_threshold = 0.01);

/// Marginal comparison of the scaled queue against the fluid limit at fixed
/// time points, over independent replications of both sides, started from an
/// empty queue / level zero.
///
/// With a deterministic start the limit marginal has an atom at lambda*t
/// (the no-jump trajectory), and an empirical-cdf sup distance does not
/// vanish at an atom. Each time point is therefore compared as (i) the
/// no-departure/no-jump proportions (two-proportion z-test) and (ii) a
/// two-sample KS on the jump-conditioned marginals, which are absolutely
/// continuous. When too few paths have jumped for (ii) the KS row is the
/// degenerate full-sample comparison at t = 0 or omitted.
ComparisonReport finite_dim_compare(double rho, const std::vector<double>& times,
                                    const ScalingConfig& config, std::uint64_t stream_base);

}  // namespace batchq::experiments
