#pragma once

#include <cstdint>
#include <vector>

#include "eqstop/discounting.hpp"
#include "eqstop/numerics.hpp"

namespace eqstop::smoking {

// Deterministic cost X_s = x exp(rate (s - t)) of quitting at s, discounted
// by delta(s - t) and minimised over quitting times in [t, T]. The defaults
// are rate = 1/2 with delta(s) = 1 / (1 + s).
struct SmokingProblem {
  double horizon = 10.0;
  double rate = 0.5;
  DiscountFunction discount = DiscountFunction::hyperbolic(1.0);

  void validate() const;
  // delta(u) exp(rate u) per unit of current cost.
  double relative_cost(double u) const;
};

// Positive root of exp(s/2) = 1 + s (about 2.51286).
double s_star(const numerics::RootSpec& roots = {});

// Quitting time planned at t by the naive smoker: t + 1 if t < T - 1, else T.
double smoking_naive(double horizon, double t);

// Theta applied to the naive policy: t if t < T - s*, else T.
double smoking_theta(double horizon, double t);

// A policy that depends on time only, on a uniform grid of [0, T]: the
// smoker quits at grid time t_i whenever stop[i] is set. T always stops.
struct TimeGridPolicy {
  std::vector<double> times;
  std::vector<std::uint8_t> stop;

  // L: first stopping grid index at or after i.
  std::size_t entry_index(std::size_t i) const;
  // L*: i itself when stopping continues right after t_i, otherwise the
  // first stopping index after i.
  std::size_t strict_entry_index(std::size_t i) const;
  // The quitting time realised from t_i, i.e. t_{L(i)}.
  double quit_time(std::size_t i) const { return times[entry_index(i)]; }

  bool operator==(const TimeGridPolicy&) const = default;
};

// The naive policy as a time policy: it never quits before T, since every
// naive self postpones by one more unit.
TimeGridPolicy naive_policy(const SmokingProblem& p, int grid_n);

enum class Label : std::uint8_t { Stop, Continue, Indifferent };

// One Theta application for cost minimisation: quit now (S) when waiting
// until L* costs more, continue (C) when it costs less, keep the current
// action when indifferent within abs_tol.
TimeGridPolicy theta_step(const SmokingProblem& p, const TimeGridPolicy& policy, double abs_tol = 1e-12,
                          std::vector<Label>* labels = nullptr);

struct SmokingTrace {
  std::vector<TimeGridPolicy> policies;
  bool converged = false;
  int steps = 0;  // Theta applications performed, including the confirming one
};

// Theta iteration from the naive policy. Throws NonConvergence after
// max_steps applications.
SmokingTrace smoking_iterate(const SmokingProblem& p, int grid_n = 10001, int max_steps = 10);

}  // namespace eqstop::smoking
