#pragma once

#include <string>

#include "eqstop/hitting.hpp"
#include "eqstop/numerics.hpp"
#include "eqstop/stop_set.hpp"

namespace eqstop::bessel {

// Stopping |X| for X = x + W under the reward |x| / (1 + beta (s - t)).
struct BesselProblem {
  double beta = 1.0;
  numerics::QuadratureSpec quad{};
  numerics::RootSpec roots{};

  void validate() const;
  hitting::EtaContext eta_context() const { return {beta, quad}; }
};

struct EquilibriumReport {
  double a_star = 0.0;
  double naive_threshold = 0.0;
  double x_star_of_naive = 0.0;
  double start_threshold = 0.0;
  double fixed_point = 0.0;  // threshold of the equilibrium reached from the start
  // Number of times the threshold changed on the way to the fixed point.
  int iterations_to_equilibrium = 0;
  // Theta applications until the fixed point is reproduced; at most 2.
  int formal_theta_applications = 0;
  std::string equilibrium_set_description;
};

// 1 / sqrt(beta).
double naive_threshold(const BesselProblem& p);

// sqrt(1/beta + (s - t)): the time-t naive free boundary at time s.
double naive_boundary(const BesselProblem& p, double t, double s);

// Root of k(a) = 1 on (0, 1/sqrt(beta)).
double solve_a_star(const BesselProblem& p);

// The root of eta(x, a) = x in (0, a*) for a > a*. Throws NoInteriorCrossing
// when a <= a* + x_tol.
double solve_x_star(const BesselProblem& p, double a);
// Same, with a* already known.
double solve_x_star(const BesselProblem& p, double a, double a_star);

// Theta applied to tau_a: tau_a itself for a <= a*, tau_{x*(a)} otherwise.
ThresholdPolicy apply_theta_to_threshold(const BesselProblem& p, double a);

// Iterates apply_theta_to_threshold from a0 until the threshold is fixed.
// Throws NonConvergence after 10 applications.
EquilibriumReport iterate_to_equilibrium(const BesselProblem& p, double a0);

// a*, the threshold of the optimal equilibrium.
double optimal_equilibrium(const BesselProblem& p);

// Closed-form value of the time-t problem restricted to stopping at s or
// later, evaluated at (s, x).
double value_function_w(const BesselProblem& p, double t, double s, double x);

}  // namespace eqstop::bessel
