#include "batchq/fluid/path.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace batchq::fluid {

FluidPath fluid_simulate(double xi0, double lambda, double horizon, const CutLaw& cut,
                         RngStream& rng) {
  if (!(xi0 >= 0.0)) throw std::invalid_argument("fluid_simulate: xi0 must be >= 0");
  if (!(lambda > 0.0)) throw std::invalid_argument("fluid_simulate: lambda must be > 0");
  if (!(horizon > 0.0)) throw std::invalid_argument("fluid_simulate: horizon must be > 0");

  FluidPath path;
  path.lambda = lambda;
  path.xi0 = xi0;
  path.horizon = horizon;

  double t = 0.0;
  double level = xi0;
  for (;;) {
    const double e = rng.exponential(1.0);
    const double pre = std::sqrt(level * level + 2.0 * e);
    const double next = t + (pre - level) / lambda;
    if (next > horizon) return path;
    const double post = cut.sample(rng) * pre;
    path.jumps.push_back(FluidJump{next, pre, post});
    t = next;
    level = post;
  }
}

double FluidPath::value(double t) const {
  if (!(t >= 0.0) || t > horizon) throw std::out_of_range("FluidPath::value: t outside [0,horizon]");
  const auto it = std::upper_bound(jumps.begin(), jumps.end(), t,
                                   [](double x, const FluidJump& j) { return x < j.tau; });
  if (it == jumps.begin()) return xi0 + lambda * t;
  const FluidJump& j = *(it - 1);
  return j.post + lambda * (t - j.tau);
}

double FluidPath::time_average_tail(double x, double burn_in) const {
  if (!(horizon > burn_in))
    throw std::invalid_argument("FluidPath::time_average_tail: horizon must exceed burn_in");
  double above = 0.0;
  double seg_start = 0.0;
  double seg_level = xi0;
  auto account = [&](double seg_end) {
    const double lo = std::max(seg_start, burn_in);
    const double hi = std::min(seg_end, horizon);
    if (hi <= lo) return;
    // level grows linearly from seg_level at seg_start; crosses x at t_x
    if (seg_level >= x) {
      above += hi - lo;
    } else {
      const double t_cross = seg_start + (x - seg_level) / lambda;
      if (t_cross < hi) above += hi - std::max(lo, t_cross);
    }
  };
  for (const FluidJump& j : jumps) {
    account(j.tau);
    seg_start = j.tau;
    seg_level = j.post;
  }
  account(horizon);
  return above / (horizon - burn_in);
}

void write_ledger_csv(std::ostream& out, const FluidPath& path) {
  out << "n,tau,pre,post\n";
  char a[40], b[40], c[40];
  for (std::size_t i = 0; i < path.jumps.size(); ++i) {
    std::snprintf(a, sizeof(a), "%.17g", path.jumps[i].tau);
    std::snprintf(b, sizeof(b), "%.17g", path.jumps[i].pre);
    std::snprintf(c, sizeof(c), "%.17g", path.jumps[i].post);
    out << (i + 1) << ',' << a << ',' << b << ',' << c << '\n';
  }
}

}  // namespace batchq::fluid
