#pragma once

namespace batchq::analytic {

/// Tail e^{-x^2/2} of the Rayleigh law that the rescaled stationary queue
/// Q/sqrt(rho) approaches as rho grows.
double rayleigh_tail(double x);

/// Density x e^{-x^2/2}.
double rayleigh_density(double x);

/// n-th moment n!! * sqrt(pi/2)^(n mod 2), n >= 0.
double rayleigh_moment(int n);

}  // namespace batchq::analytic
