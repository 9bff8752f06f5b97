#pragma once

#include <functional>
#include <vector>

namespace eqstop::numerics {

using RealFunction = std::function<double(double)>;

enum class QuadratureMethod { GaussLaguerre, AdaptiveTruncated };

// Integration of f against the weight e^{-s} on [0, inf).
struct QuadratureSpec {
  QuadratureMethod method = QuadratureMethod::GaussLaguerre;
  int node_count = 64;
  // Upper limit of the adaptive rule; e^{-50} ~ 2e-22 so the tail is negligible.
  double truncation = 50.0;
  double abs_tol = 1e-10;

  void validate() const;
};

struct RootSpec {
  double bracket_lo = 0.0;
  double bracket_hi = 1.0;
  double x_tol = 1e-10;
  double f_tol = 1e-12;
  int max_iter = 200;

  void validate() const;
  RootSpec with_bracket(double lo, double hi) const {
    RootSpec out = *this;
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    return out;
  }
};

struct GaussLaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes and weights for the n-point rule, cached after the first computation.
const GaussLaguerreRule& gauss_laguerre_rule(int n);

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  QuadratureMethod method_used = QuadratureMethod::GaussLaguerre;
};

// The Gauss-Laguerre path evaluates the n- and 2n-point rules and returns the
// latter when they agree to abs_tol; otherwise it falls back to adaptive
// Gauss-Kronrod on [0, truncation] in the variable u = sqrt(s).
IntegralResult integrate_exp_weight_detailed(const RealFunction& f, const QuadratureSpec& spec);
double integrate_exp_weight(const RealFunction& f, const QuadratureSpec& spec);

// Bracketing root finder (TOMS 748). The result always lies in the initial
// bracket and satisfies |g(x)| <= f_tol or is within x_tol of a sign change.
double find_root(const RealFunction& g, const RootSpec& spec);

// Overflow-safe hyperbolic evaluations.
double sech(double y);
// cosh(num) / cosh(den)
double cosh_ratio(double num, double den);
// sinh(num) / cosh(den)
double sinh_cosh_ratio(double num, double den);
// sinh(num) / sinh(den) for 0 <= num <= den; tends to num/den as den -> 0.
double sinh_ratio(double num, double den);

}  // namespace eqstop::numerics
