#include "batchq/analytic/moments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace batchq::analytic {

MomentTable factorial_moments(int n_max, double rho, double m1, double m1_error) {
  if (n_max < 2) throw std::invalid_argument("factorial_moments: n_max must be >= 2");
  if (!(rho > 0.0)) throw std::invalid_argument("factorial_moments: rho must be > 0");
  if (!(m1 >= 0.0)) throw std::invalid_argument("factorial_moments: m1 must be >= 0");

  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::vector<long double> m(static_cast<std::size_t>(n_max) + 1);
  std::vector<long double> err(static_cast<std::size_t>(n_max) + 1);
  m[0] = 1.0L;
  m[1] = m1;
  err[0] = eps;
  err[1] = std::max<long double>(m1_error, eps * std::abs(m1));

  for (int n = 0; n + 2 <= n_max; ++n) {
    const long double f = static_cast<long double>(n) + 2.0L;
    m[n + 2] = f * (static_cast<long double>(rho) * m[n] - m[n + 1]);
    err[n + 2] = f * (static_cast<long double>(rho) * err[n] + err[n + 1]) +
                 eps * f * (static_cast<long double>(rho) * std::abs(static_cast<double>(m[n])) +
                            std::abs(static_cast<double>(m[n + 1])));
    if (m[n + 2] < -err[n + 2])
      throw std::runtime_error(
          "factorial_moments: cancellation failure, moment " + std::to_string(n + 2) +
          " is negative beyond its error estimate");
  }

  MomentTable out;
  out.rho = rho;
  out.m.resize(m.size());
  out.error.resize(m.size());
  out.first_insignificant = n_max + 1;
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.m[i] = static_cast<double>(m[i]);
    out.error[i] = static_cast<double>(err[i]);
    if (out.first_insignificant > n_max && out.error[i] >= std::abs(out.m[i]) && i >= 2)
      out.first_insignificant = static_cast<int>(i);
  }
  return out;
}

}  // namespace batchq::analytic
