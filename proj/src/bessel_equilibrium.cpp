#include "eqstop/bessel_equilibrium.hpp"

#include <cmath>
#include <sstream>

#include "eqstop/error.hpp"

namespace eqstop::bessel {

namespace {
constexpr int kMaxThetaApplications = 10;
constexpr double kBracketInset = 1e-8;
}  // namespace

void BesselProblem::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) fail(ErrorCode::InvalidBeta, "beta must be > 0");
  quad.validate();
  roots.validate();
}

double naive_threshold(const BesselProblem& p) {
  p.validate();
  return 1.0 / std::sqrt(p.beta);
}

double naive_boundary(const BesselProblem& p, double t, double s) {
  p.validate();
  if (t < 0.0) fail(ErrorCode::NegativeTime, "t must be >= 0");
  if (s < t) fail(ErrorCode::TimeOrder, "boundary needs s >= t");
  return std::sqrt(1.0 / p.beta + (s - t));
}

double solve_a_star(const BesselProblem& p) {
  p.validate();
  const hitting::EtaContext ctx = p.eta_context();
  const double hi = 1.0 / std::sqrt(p.beta);
  return numerics::find_root([&](double a) { return hitting::k(ctx, a) - 1.0; }, p.roots.with_bracket(0.0, hi));
}

double solve_x_star(const BesselProblem& p, double a, double a_star) {
  p.validate();
  if (!(a > a_star + p.roots.x_tol)) {
    std::ostringstream os;
    os << "eta(x, a) > x on (0, a) for a = " << a << " <= a* = " << a_star;
    fail(ErrorCode::NoInteriorCrossing, os.str());
  }
  const hitting::EtaContext ctx = p.eta_context();
  return numerics::find_root([&](double x) { return hitting::eta(ctx, x, a) - x; },
                             p.roots.with_bracket(kBracketInset, a - kBracketInset));
}

double solve_x_star(const BesselProblem& p, double a) { return solve_x_star(p, a, solve_a_star(p)); }

namespace {

double theta_threshold(const BesselProblem& p, double a, double a_star) {
  return a <= a_star ? a : solve_x_star(p, a, a_star);
}

}  // namespace

ThresholdPolicy apply_theta_to_threshold(const BesselProblem& p, double a) {
  if (!(a >= 0.0) || !std::isfinite(a)) fail(ErrorCode::InvalidArgument, "threshold must be finite and >= 0");
  return ThresholdPolicy::threshold(theta_threshold(p, a, solve_a_star(p)));
}

EquilibriumReport iterate_to_equilibrium(const BesselProblem& p, double a0) {
  if (!(a0 >= 0.0) || !std::isfinite(a0)) fail(ErrorCode::InvalidArgument, "threshold must be finite and >= 0");
  EquilibriumReport r;
  r.a_star = solve_a_star(p);
  r.naive_threshold = naive_threshold(p);
  r.x_star_of_naive = solve_x_star(p, r.naive_threshold, r.a_star);
  r.start_threshold = a0;

  double a = a0;
  for (int n = 1; n <= kMaxThetaApplications; ++n) {
    const double next = theta_threshold(p, a, r.a_star);
    r.formal_theta_applications = n;
    if (next == a) {
      r.fixed_point = a;
      std::ostringstream os;
      os.precision(12);
      os << "equilibrium thresholds [0, " << r.a_star << "]";
      r.equilibrium_set_description = os.str();
      // x*(a) < a*, so Theta twice always reaches the fixed point.
      if (r.formal_theta_applications > 2) {
        fail(ErrorCode::NonConvergence, "threshold iteration needed more than two Theta applications");
      }
      return r;
    }
    a = next;
    ++r.iterations_to_equilibrium;
  }
  fail(ErrorCode::NonConvergence, "threshold iteration did not reach a fixed point");
}

double optimal_equilibrium(const BesselProblem& p) { return solve_a_star(p); }

double value_function_w(const BesselProblem& p, double t, double s, double x) {
  p.validate();
  if (t < 0.0) fail(ErrorCode::NegativeTime, "t must be >= 0");
  if (s < t) fail(ErrorCode::TimeOrder, "value function needs s >= t");
  const double beta = p.beta;
  const double elapsed = 1.0 + beta * (s - t);
  const double y = std::abs(x);
  if (y < std::sqrt(1.0 / beta + (s - t))) {
    return std::exp(0.5 * (beta * x * x / elapsed - 1.0)) / (std::sqrt(beta) * std::sqrt(elapsed));
  }
  return y / elapsed;
}

}  // namespace eqstop::bessel
