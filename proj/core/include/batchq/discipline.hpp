#pragma once

#include <stdexcept>
#include <variant>

#include "batchq/rng.hpp"

namespace batchq {

/// Law of the surviving fraction applied at a batch departure, supported
/// strictly inside (0,1).
class CutLaw {
 public:
  struct Uniform {};
  struct Beta {
    double a, b;
  };

  static CutLaw uniform() { return CutLaw(Uniform{}); }
  static CutLaw beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("CutLaw::beta: parameters must be > 0");
    return CutLaw(Beta{a, b});
  }

  double sample(RngStream& rng) const {
    if (std::holds_alternative<Uniform>(law_)) return rng.next_open();
    const auto& p = std::get<Beta>(law_);
    const double x = rng.gamma(p.a, 1.0);
    const double y = rng.gamma(p.b, 1.0);
    return x / (x + y);
  }

  bool is_uniform() const { return std::holds_alternative<Uniform>(law_); }

 private:
  using Law = std::variant<Uniform, Beta>;
  explicit CutLaw(Law law) : law_(law) {}
  Law law_;
};

/// Departure discipline.
///
/// FifoBatch: the completing customer leaves with everyone in front of it;
/// LifoBatch: with everyone behind it. Under either, the post-departure size
/// is uniform on {0..i-1} when the pre-departure size is i. GeneralFraction
/// keeps floor(B*i) customers for a sampled fraction B.
struct FifoBatch {};
struct LifoBatch {};
struct GeneralFraction {
  CutLaw cut = CutLaw::uniform();
};

using Discipline = std::variant<FifoBatch, LifoBatch, GeneralFraction>;

}  // namespace batchq
