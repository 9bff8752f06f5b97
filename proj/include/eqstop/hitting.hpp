#pragma once

#include "eqstop/numerics.hpp"

namespace eqstop::hitting {

// Quantities for the first time T_a^x at which |x + W| reaches a, W a
// standard Brownian motion, under hyperbolic discounting 1 / (1 + beta T).
struct EtaContext {
  double beta = 1.0;
  numerics::QuadratureSpec quad{};

  void validate() const;
};

// E[exp(-lam^2 T / 2)] = cosh(x lam) sech(a lam) for 0 <= x <= a.
double laplace_hitting(double x, double a, double lam);

// eta(x, a) = E[a / (1 + beta T)] = a int_0^inf e^{-s} cosh(x y) sech(a y) ds,
// y = sqrt(2 beta s). Defined for 0 <= x <= a.
double eta(const EtaContext& ctx, double x, double a);

// d eta / dx, differentiated under the integral sign.
double eta_x(const EtaContext& ctx, double x, double a);

// k(a) = eta_x(a, a) = a int_0^inf e^{-s} y tanh(a y) ds. k(0) = 0 and k is
// strictly increasing; k(a*) = 1 defines the largest equilibrium threshold.
double k(const EtaContext& ctx, double a);

}  // namespace eqstop::hitting
