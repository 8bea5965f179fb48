#pragma once

#include <stdexcept>

namespace batchq {

/// Arrival rate lambda and service rate mu; the load rho = lambda/mu is
/// always the exact quotient of the stored rates.
struct ModelParams {
  double lambda;
  double mu;

  ModelParams(double lambda_, double mu_) : lambda(lambda_), mu(mu_) {
    if (!(lambda > 0.0) || !(mu > 0.0))
      throw std::invalid_argument("ModelParams: rates must be positive");
  }

  static ModelParams from_rho(double lambda, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("ModelParams: rho must be positive");
    return ModelParams(lambda, lambda / rho);
  }

  double rho() const { return lambda / mu; }
};

}  // namespace batchq
