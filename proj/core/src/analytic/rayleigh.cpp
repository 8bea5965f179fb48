#include "batchq/analytic/rayleigh.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace batchq::analytic {

double rayleigh_tail(double x) {
  if (x < 0.0) throw std::invalid_argument("rayleigh_tail: x must be >= 0");
  return std::exp(-0.5 * x * x);
}

double rayleigh_density(double x) {
  if (x < 0.0) throw std::invalid_argument("rayleigh_density: x must be >= 0");
  return x * std::exp(-0.5 * x * x);
}

double rayleigh_moment(int n) {
  if (n < 0) throw std::invalid_argument("rayleigh_moment: n must be >= 0");
  double dfac = 1.0;
  for (int l = n; l >= 2; l -= 2) dfac *= l;
  if (n % 2 == 1) dfac *= std::sqrt(std::numbers::pi / 2.0);
  return dfac;
}

}  // namespace batchq::analytic
