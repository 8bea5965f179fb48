#include "batchq/analytic/stationary.hpp"

#include <cmath>
#include <stdexcept>

namespace batchq::analytic {

namespace {

void check_rho(double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("stationary: rho must be > 0");
}

// Prefactor (1 - L(k/rho)) / (k/rho), computed from the stable complement.
double prefactor(int k, double rho, const ArrivalModel& arrival) {
  const double s = static_cast<double>(k) / rho;
  return arrival.lst_normalized_complement(s) / s;
}

}  // namespace

double stationary_tail(int k, double rho, const ArrivalModel& arrival) {
  check_rho(rho);
  if (k < 1)
    throw std::invalid_argument("stationary_tail: k must be >= 1 (tail at 0 is 1 by convention)");
  double prod = 1.0;
  for (int i = 1; i < k; ++i) prod *= arrival.lst_normalized(static_cast<double>(i) / rho);
  return prefactor(k, rho, arrival) * prod;
}

double stationary_pmf(int k, double rho, const ArrivalModel& arrival) {
  check_rho(rho);
  if (k < 0) throw std::invalid_argument("stationary_pmf: k must be >= 0");
  const double upper = (k == 0) ? 1.0 : stationary_tail(k, rho, arrival);
  return upper - stationary_tail(k + 1, rho, arrival);
}

double StationaryTailTable::tail(int k) const {
  if (k <= 0) return 1.0;
  if (k > k_max) throw std::out_of_range("StationaryTailTable::tail: k beyond table");
  return tails[static_cast<std::size_t>(k - 1)];
}

double StationaryTailTable::pmf(int k) const {
  return tail(k) - tail(k + 1);
}

StationaryTailTable StationaryTailTable::build(int k_max, double rho,
                                               const ArrivalModel& arrival) {
  check_rho(rho);
  if (k_max < 1) throw std::invalid_argument("StationaryTailTable: k_max must be >= 1");
  StationaryTailTable t;
  t.rho = rho;
  t.k_max = k_max;
  t.tails.reserve(static_cast<std::size_t>(k_max));
  double prod = 1.0;  // prod_{i=1}^{k-1} L(i/rho)
  for (int k = 1; k <= k_max; ++k) {
    t.tails.push_back(prefactor(k, rho, arrival) * prod);
    prod *= arrival.lst_normalized(static_cast<double>(k) / rho);
  }
  return t;
}

MeanStationary mean_stationary(double rho, const ArrivalModel& arrival, double tol) {
  check_rho(rho);
  if (!(tol > 0.0)) throw std::invalid_argument("mean_stationary: tol must be > 0");
  const int block = std::max(1, static_cast<int>(std::floor(5.0 * std::sqrt(rho))));
  const long cap = std::max<long>(1'000'000, 100L * block);
  double sum = 0.0;
  double prod = 1.0;
  for (long k = 1; k <= cap; ++k) {
    const double s = static_cast<double>(k) / rho;
    const double comp = arrival.lst_normalized_complement(s);
    sum += (comp / s) * prod;
    prod *= 1.0 - comp;  // now prod = prod_{i=1}^{k} L(i/rho)
    if (k >= block) {
      const double bound = prod / comp;
      if (bound < tol)
        return MeanStationary{sum, bound, static_cast<int>(k)};
    }
  }
  throw std::runtime_error("mean_stationary: truncation bound did not reach tol within cap");
}

double mean_cycle(double rho, double lambda, const ArrivalModel& arrival) {
  check_rho(rho);
  if (!(lambda > 0.0)) throw std::invalid_argument("mean_cycle: lambda must be > 0");
  return 1.0 / (lambda * arrival.lst_normalized_complement(1.0 / rho));
}

double mean_level_arrivals(int k, double rho, const ArrivalModel& arrival) {
  check_rho(rho);
  if (k < 2) throw std::invalid_argument("mean_level_arrivals: k must be >= 2");
  const double sk = static_cast<double>(k) / rho;
  const double sk1 = static_cast<double>(k - 1) / rho;
  return arrival.lst_normalized(sk1) * arrival.lst_normalized_complement(sk) /
         arrival.lst_normalized_complement(sk1);
}

}  // namespace batchq::analytic
