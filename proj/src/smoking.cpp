#include "eqstop/smoking.hpp"

#include <cmath>

#include "eqstop/error.hpp"

namespace eqstop::smoking {

namespace {

void check_time(double horizon, double t) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) fail(ErrorCode::DomainError, "horizon must be > 0");
  if (!(t >= 0.0 && t <= horizon)) fail(ErrorCode::DomainError, "t must lie in [0, T]");
}

}  // namespace

void SmokingProblem::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) fail(ErrorCode::DomainError, "horizon must be > 0");
  if (!std::isfinite(rate)) fail(ErrorCode::NonFinite, "rate must be finite");
}

double SmokingProblem::relative_cost(double u) const { return discount(u) * std::exp(rate * u); }

double s_star(const numerics::RootSpec& roots) {
  return numerics::find_root([](double s) { return std::exp(0.5 * s) - 1.0 - s; }, roots.with_bracket(1.0, 5.0));
}

double smoking_naive(double horizon, double t) {
  check_time(horizon, t);
  return t < horizon - 1.0 ? t + 1.0 : horizon;
}

double smoking_theta(double horizon, double t) {
  check_time(horizon, t);
  return t < horizon - s_star() ? t : horizon;
}

std::size_t TimeGridPolicy::entry_index(std::size_t i) const {
  while (i + 1 < stop.size() && !stop[i]) ++i;
  return i;
}

std::size_t TimeGridPolicy::strict_entry_index(std::size_t i) const {
  if (i + 1 >= stop.size()) return i;
  if (stop[i] && stop[i + 1]) return i;
  return entry_index(i + 1);
}

TimeGridPolicy naive_policy(const SmokingProblem& p, int grid_n) {
  p.validate();
  if (grid_n < 2) fail(ErrorCode::InvalidArgument, "time grid needs at least 2 points");
  TimeGridPolicy out;
  out.times.resize(static_cast<std::size_t>(grid_n));
  const double h = p.horizon / (grid_n - 1);
  for (int i = 0; i < grid_n; ++i) out.times[i] = h * i;
  out.times.back() = p.horizon;
  out.stop.assign(out.times.size(), 0);
  out.stop.back() = 1;
  return out;
}

TimeGridPolicy theta_step(const SmokingProblem& p, const TimeGridPolicy& policy, double abs_tol,
                          std::vector<Label>* labels) {
  const std::size_t n = policy.times.size();
  if (n < 2 || policy.stop.size() != n) fail(ErrorCode::InvalidArgument, "malformed time policy");
  TimeGridPolicy out = policy;
  if (labels) labels->assign(n, Label::Indifferent);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = policy.strict_entry_index(i);
    const double wait = p.relative_cost(policy.times[j] - policy.times[i]);
    Label label = Label::Indifferent;
    if (wait > 1.0 + abs_tol) {
      label = Label::Stop;
    } else if (wait < 1.0 - abs_tol) {
      label = Label::Continue;
    }
    if (label != Label::Indifferent) out.stop[i] = label == Label::Stop;
    if (labels) (*labels)[i] = label;
  }
  out.stop.back() = 1;
  return out;
}

SmokingTrace smoking_iterate(const SmokingProblem& p, int grid_n, int max_steps) {
  SmokingTrace trace;
  trace.policies.push_back(naive_policy(p, grid_n));
  while (trace.steps < max_steps) {
    TimeGridPolicy next = theta_step(p, trace.policies.back());
    ++trace.steps;
    const bool fixed = next == trace.policies.back();
    trace.policies.push_back(std::move(next));
    if (fixed) {
      trace.converged = true;
      return trace;
    }
  }
  fail(ErrorCode::NonConvergence, "smoking policy still changing after max_steps Theta applications");
}

}  // namespace eqstop::smoking
