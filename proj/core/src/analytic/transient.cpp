#include "batchq/analytic/transient.hpp"

#include <cmath>
#include <stdexcept>

#include "batchq/stats.hpp"

namespace batchq::analytic {

CoefficientTable CoefficientTable::build(int k_max, std::vector<double> initial_pmf,
                                         double lambda, double mu) {
  if (k_max < 1) throw std::invalid_argument("CoefficientTable: k_max must be >= 1");
  if (!(lambda > 0.0) || !(mu > 0.0))
    throw std::invalid_argument("CoefficientTable: rates must be > 0");
  if (initial_pmf.empty() || static_cast<int>(initial_pmf.size()) > k_max + 1)
    throw std::invalid_argument("CoefficientTable: initial pmf must fit within 0..k_max");
  double mass = 0.0;
  for (double p : initial_pmf) {
    if (p < 0.0) throw std::invalid_argument("CoefficientTable: negative initial probability");
    mass += p;
  }
  if (std::abs(mass - 1.0) > 1e-12)
    throw std::invalid_argument("CoefficientTable: initial pmf must sum to 1 within 1e-12");

  CoefficientTable t;
  t.k_max_ = k_max;
  t.lambda_ = lambda;
  t.mu_ = mu;
  initial_pmf.resize(static_cast<std::size_t>(k_max) + 1, 0.0);
  t.initial_pmf_ = initial_pmf;
  t.initial_support_max_ = 0;
  for (int k = 0; k <= k_max; ++k)
    if (initial_pmf[static_cast<std::size_t>(k)] > 0.0) t.initial_support_max_ = k;

  const long double rho = static_cast<long double>(lambda) / mu;

  // Stationary pmf under Poisson arrivals: tail(k) = prod_{i<=k} rho/(rho+i).
  std::vector<long double> pi(static_cast<std::size_t>(k_max) + 1);
  long double tail = 1.0L;
  for (int k = 0; k <= k_max; ++k) {
    const long double kk = static_cast<long double>(k);
    pi[static_cast<std::size_t>(k)] = tail * (kk + 1.0L) / (rho + kk + 1.0L);
    tail *= rho / (rho + kk + 1.0L);
  }

  t.rows_.resize(static_cast<std::size_t>(k_max) + 1);
  // colsum[i] accumulates sum_{l >= i-1} C_{l,i} over completed rows.
  std::vector<long double> colsum(static_cast<std::size_t>(k_max) + 2, 0.0L);
  for (int k = 0; k <= k_max; ++k) {
    auto& row = t.rows_[static_cast<std::size_t>(k)];
    row.resize(static_cast<std::size_t>(k) + 2);
    row[0] = pi[static_cast<std::size_t>(k)];
    long double sum = row[0];
    for (int i = 1; i <= k; ++i) {
      const long double prev = t.rows_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i)];
      row[static_cast<std::size_t>(i)] =
          (rho * prev - colsum[static_cast<std::size_t>(i)]) / static_cast<long double>(k + 1 - i);
      sum += row[static_cast<std::size_t>(i)];
    }
    row[static_cast<std::size_t>(k) + 1] =
        static_cast<long double>(initial_pmf[static_cast<std::size_t>(k)]) - sum;
    for (int i = 1; i <= k + 1; ++i)
      colsum[static_cast<std::size_t>(i)] += row[static_cast<std::size_t>(i)];
  }
  return t;
}

std::vector<double> CoefficientTable::evaluate(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("CoefficientTable::evaluate: t must be >= 0");
  if (k_max_ < required_k_max(t, lambda_, initial_support_max_))
    throw std::invalid_argument(
        "CoefficientTable::evaluate: k_max too small for this horizon; see required_k_max");
  std::vector<double> out(static_cast<std::size_t>(k_max_) + 1);
  for (int k = 0; k <= k_max_; ++k) {
    const auto& row = rows_[static_cast<std::size_t>(k)];
    long double p = row[0];
    for (int i = 1; i <= k + 1; ++i) {
      const long double e = std::exp(-(static_cast<long double>(lambda_) + i * static_cast<long double>(mu_)) * t);
      p += row[static_cast<std::size_t>(i)] * e;
    }
    double v = static_cast<double>(p);
    if (v < 0.0) v = 0.0;
    if (v > 1.0) v = 1.0;
    out[static_cast<std::size_t>(k)] = v;
  }
  return out;
}

double CoefficientTable::row_sum(int k) const {
  if (k < 0 || k > k_max_) throw std::out_of_range("CoefficientTable::row_sum: k out of range");
  const auto& row = rows_[static_cast<std::size_t>(k)];
  long double s = 0.0L;
  for (const long double c : row) s += c;
  return static_cast<double>(s);
}

double CoefficientTable::coefficient(int k, int i) const {
  if (k < 0 || k > k_max_ || i < 0 || i > k + 1)
    throw std::out_of_range("CoefficientTable::coefficient: index out of range");
  return static_cast<double>(rows_[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]);
}

int required_k_max(double t, double lambda, int initial_support_max) {
  const double nu = lambda * t;
  int k = initial_support_max + 20;
  while (stats::poisson_tail(nu, k - 20 - initial_support_max) >= 1e-10) {
    ++k;
    if (k > 10'000'000) throw std::runtime_error("required_k_max: horizon too large");
  }
  return k;
}

std::vector<double> transient_pmf(double t, int k_max, const std::vector<double>& initial_pmf,
                                  double lambda, double mu) {
  return CoefficientTable::build(k_max, initial_pmf, lambda, mu).evaluate(t);
}

}  // namespace batchq::analytic
