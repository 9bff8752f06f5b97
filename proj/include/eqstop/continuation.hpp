#pragma once

#include <memory>

#include "eqstop/discounting.hpp"
#include "eqstop/model.hpp"
#include "eqstop/montecarlo.hpp"
#include "eqstop/numerics.hpp"
#include "eqstop/stop_set.hpp"

namespace eqstop {

struct ContinuationValue {
  double value = 0.0;
  double std_error = 0.0;
  bool horizon_truncation = false;
};

// J(0, x; L*tau) (strict) or J(0, x; L tau) for a threshold-type policy tau
// of a time-homogeneous model, together with the payoff g.
class ContinuationEvaluator {
 public:
  virtual ~ContinuationEvaluator() = default;

  virtual double payoff(double x) const = 0;
  virtual ContinuationValue evaluate(const ThresholdPolicy& policy, double x, bool strict) const = 0;
};

// Simulation-based evaluator. Each state gets its own master seed derived
// from spec.master_seed and the state value, so results do not depend on the
// order in which states are evaluated.
class MonteCarloEvaluator final : public ContinuationEvaluator {
 public:
  MonteCarloEvaluator(DiffusionModel model, DiscountFunction d, mc::Payoff g, mc::MonteCarloSpec spec);

  double payoff(double x) const override { return g_(x); }
  ContinuationValue evaluate(const ThresholdPolicy& policy, double x, bool strict) const override;

 private:
  DiffusionModel model_;
  DiscountFunction d_;
  mc::Payoff g_;
  mc::MonteCarloSpec spec_;
};

// Exact evaluator for X = x + sigma W. The exit time of the gap around x
// has closed-form Laplace transforms; exponential and quasi-hyperbolic
// discounts use them directly and the hyperbolic discount integrates them
// against e^{-s}. Started in (or on the boundary of) the stop set, L* = 0
// almost surely, so the value is g(x). Custom discounts throw Unsupported.
class BrownianAnalyticEvaluator final : public ContinuationEvaluator {
 public:
  BrownianAnalyticEvaluator(double sigma, DiscountFunction d, mc::Payoff g, numerics::QuadratureSpec quad = {});

  double payoff(double x) const override { return g_(x); }
  ContinuationValue evaluate(const ThresholdPolicy& policy, double x, bool strict) const override;

  // E[exp(-q T) g(X_T)] for T the exit time of the signed gap (lo, hi) from x.
  double discounted_exit_payoff(double x, double lo, double hi, double q) const;

 private:
  double sigma_;
  DiscountFunction d_;
  mc::Payoff g_;
  numerics::QuadratureSpec quad_;
};

}  // namespace eqstop
