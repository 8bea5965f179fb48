#pragma once

#include <string>
#include <variant>

#include "batchq/rng.hpp"

namespace batchq {

/// Renewal inter-arrival law with a known mean and an analytic
/// Laplace-Stieltjes transform of its normalized version.
///
/// Only laws whose normalized transform E exp(-s*A/EA) has a closed form are
/// supported; that keeps every stationary-tail evaluation exact. For a law
/// with mean m, the normalized inter-arrival time A/m has mean exactly 1.
class ArrivalModel {
 public:
  struct Exponential {
    double rate;
  };
  struct Deterministic {
    double period;
  };
  struct UniformInterval {
    double lo, hi;
  };
  struct Gamma {
    double shape, rate;
  };

  static ArrivalModel exponential(double rate);
  static ArrivalModel deterministic(double period);
  static ArrivalModel uniform_interval(double lo, double hi);
  static ArrivalModel gamma(double shape, double rate);

  double mean() const;

  /// Same law rescaled so that the mean equals 1/lambda.
  ArrivalModel with_rate(double lambda) const;

  /// One inter-arrival sample; strictly positive.
  double sample(RngStream& rng) const;

  /// One sample of the normalized inter-arrival time A/EA.
  double sample_normalized(RngStream& rng) const;

  /// E exp(-s * A/EA) for s >= 0. Equals 1 at s = 0, strictly decreasing,
  /// valued in (0,1].
  double lst_normalized(double s) const;

  /// 1 - lst_normalized(s), computed without cancellation for small s.
  double lst_normalized_complement(double s) const;

  std::string describe() const;

  template <typename Visitor>
  decltype(auto) visit(Visitor&& v) const {
    return std::visit(std::forward<Visitor>(v), law_);
  }

 private:
  using Law = std::variant<Exponential, Deterministic, UniformInterval, Gamma>;
  explicit ArrivalModel(Law law) : law_(law) {}

  Law law_;
};

}  // namespace batchq
