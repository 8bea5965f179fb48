#include "batchq/arrival.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace batchq {

namespace {

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

// (1 - exp(-d)) / d, continuous at 0.
double expm1_ratio(double d) {
  if (d < 1e-5) return 1.0 - d / 2.0 + d * d / 6.0 - d * d * d / 24.0;
  return -std::expm1(-d) / d;
}

// 1 - (1 - exp(-d)) / d = d/2 - d^2/6 + ...
double one_minus_expm1_ratio(double d) {
  if (d < 1e-5) return d / 2.0 - d * d / 6.0 + d * d * d / 24.0;
  return 1.0 - expm1_ratio(d);
}

}  // namespace

ArrivalModel ArrivalModel::exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("ArrivalModel: exponential rate must be > 0");
  return ArrivalModel(Law{Exponential{rate}});
}

ArrivalModel ArrivalModel::deterministic(double period) {
  if (!(period > 0.0))
    throw std::invalid_argument("ArrivalModel: deterministic period must be > 0");
  return ArrivalModel(Law{Deterministic{period}});
}

ArrivalModel ArrivalModel::uniform_interval(double lo, double hi) {
  if (!(lo >= 0.0) || !(lo < hi))
    throw std::invalid_argument("ArrivalModel: uniform interval requires 0 <= lo < hi");
  return ArrivalModel(Law{UniformInterval{lo, hi}});
}

ArrivalModel ArrivalModel::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0))
    throw std::invalid_argument("ArrivalModel: gamma shape and rate must be > 0");
  return ArrivalModel(Law{Gamma{shape, rate}});
}

double ArrivalModel::mean() const {
  return visit(Overload{
      [](const Exponential& e) { return 1.0 / e.rate; },
      [](const Deterministic& d) { return d.period; },
      [](const UniformInterval& u) { return 0.5 * (u.lo + u.hi); },
      [](const Gamma& g) { return g.shape / g.rate; },
  });
}

ArrivalModel ArrivalModel::with_rate(double lambda) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("ArrivalModel::with_rate: lambda must be > 0");
  const double scale = 1.0 / (lambda * mean());
  return visit(Overload{
      [&](const Exponential&) { return exponential(lambda); },
      [&](const Deterministic&) { return deterministic(1.0 / lambda); },
      [&](const UniformInterval& u) { return uniform_interval(u.lo * scale, u.hi * scale); },
      [&](const Gamma& g) { return gamma(g.shape, g.shape * lambda); },
  });
}

double ArrivalModel::sample(RngStream& rng) const {
  return visit(Overload{
      [&](const Exponential& e) { return rng.exponential(e.rate); },
      [&](const Deterministic& d) { return d.period; },
      [&](const UniformInterval& u) { return rng.uniform(u.lo, u.hi); },
      [&](const Gamma& g) { return rng.gamma(g.shape, g.rate); },
  });
}

double ArrivalModel::sample_normalized(RngStream& rng) const {
  return sample(rng) / mean();
}

double ArrivalModel::lst_normalized(double s) const {
  if (s < 0.0) throw std::invalid_argument("lst_normalized: s must be >= 0");
  if (s == 0.0) return 1.0;
  return visit(Overload{
      [&](const Exponential&) { return 1.0 / (1.0 + s); },
      [&](const Deterministic&) { return std::exp(-s); },
      [&](const UniformInterval& u) {
        const double m = 0.5 * (u.lo + u.hi);
        const double a = u.lo / m;
        const double b = u.hi / m;
        return std::exp(-s * a) * expm1_ratio(s * (b - a));
      },
      [&](const Gamma& g) { return std::exp(-g.shape * std::log1p(s / g.shape)); },
  });
}

double ArrivalModel::lst_normalized_complement(double s) const {
  if (s < 0.0) throw std::invalid_argument("lst_normalized_complement: s must be >= 0");
  if (s == 0.0) return 0.0;
  return visit(Overload{
      [&](const Exponential&) { return s / (1.0 + s); },
      [&](const Deterministic&) { return -std::expm1(-s); },
      [&](const UniformInterval& u) {
        const double m = 0.5 * (u.lo + u.hi);
        const double a = u.lo / m;
        const double b = u.hi / m;
        const double g = expm1_ratio(s * (b - a));
        // 1 - e^{-sa} g = (1 - g) + g (1 - e^{-sa}); both terms nonnegative
        return one_minus_expm1_ratio(s * (b - a)) + g * (-std::expm1(-s * a));
      },
      [&](const Gamma& g) { return -std::expm1(-g.shape * std::log1p(s / g.shape)); },
  });
}

std::string ArrivalModel::describe() const {
  std::ostringstream out;
  visit(Overload{
      [&](const Exponential& e) { out << "exponential(rate=" << e.rate << ")"; },
      [&](const Deterministic& d) { out << "deterministic(period=" << d.period << ")"; },
      [&](const UniformInterval& u) { out << "uniform(" << u.lo << "," << u.hi << ")"; },
      [&](const Gamma& g) { out << "gamma(shape=" << g.shape << ",rate=" << g.rate << ")"; },
  });
  return out.str();
}

}  // namespace batchq
