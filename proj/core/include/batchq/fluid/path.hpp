#pragma once

#include <iosfwd>
#include <vector>

#include "batchq/discipline.hpp"
#include "batchq/rng.hpp"

namespace batchq::fluid {

struct FluidJump {
  double tau = 0.0;   // jump instant
  double pre = 0.0;   // level just before the jump
  double post = 0.0;  // level right after
};

/// Growth-collapse trajectory: grows linearly at rate lambda between jumps,
/// right-continuous at jumps. For every n,
/// pre_n = post_{n-1} + lambda (tau_n - tau_{n-1}) up to float rounding.
struct FluidPath {
  double lambda = 0.0;
  double xi0 = 0.0;
  double horizon = 0.0;
  std::vector<FluidJump> jumps;

  /// Level at time t in [0, horizon], right-continuous.
  double value(double t) const;

  /// Fraction of (burn_in, horizon] spent at levels >= x, exact on the
  /// piecewise-linear trajectory.
  double time_average_tail(double x, double burn_in = 0.0) const;
};

/// Simulate the fluid limit from level xi0.
///
/// From post-level x the next pre-jump level is sqrt(x^2 + 2E) with
/// E ~ Exp(1) -- the inverse transform of the jump law
/// P{pre >= y | x} = e^{(x^2-y^2)/2} -- so the waiting time is
/// (pre - x)/lambda. The post-jump level is the pre-jump level times a
/// cut fraction (uniform by default, or any CutLaw).
FluidPath fluid_simulate(double xi0, double lambda, double horizon, const CutLaw& cut,
                         RngStream& rng);

/// Ledger export `n,tau,pre,post`, floats at 17 significant digits.
void write_ledger_csv(std::ostream& out, const FluidPath& path);

}  // namespace batchq::fluid
