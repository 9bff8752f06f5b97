#include "eqstop/policy_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eqstop/error.hpp"

namespace eqstop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) fail(ErrorCode::InvalidArgument, "state grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0) fail(ErrorCode::InvalidArgument, "grid states must be finite and >= 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) fail(ErrorCode::InvalidArgument, "grid must be strictly increasing");
  }
}

// The interval of `policy` containing y; y must be in the set.
const Interval& component(const ThresholdPolicy& policy, double y) {
  for (const Interval& iv : policy.intervals()) {
    if (iv.lo <= y && y <= iv.hi) return iv;
  }
  fail(ErrorCode::InvalidArgument, "state is not in the stop set");
}

// The parts of the old set outside [front, back]; an end point itself is
// included only when the new set stops there, so the pieces merge with the
// reconstructed runs.
void keep_outside(const ThresholdPolicy& old, double front, double back, bool front_stopped, bool back_stopped,
                  std::vector<Interval>& out) {
  for (const Interval& iv : old.intervals()) {
    if (iv.lo < front) {
      double hi = std::min(iv.hi, front);
      if (hi == front && !front_stopped) hi = std::nextafter(front, -kInf);
      if (hi >= iv.lo) out.push_back({iv.lo, hi});
    }
    if (iv.hi > back) {
      double lo = std::max(iv.lo, back);
      if (lo == back && !back_stopped) lo = std::nextafter(back, kInf);
      if (lo <= iv.hi) out.push_back({lo, iv.hi});
    }
  }
}

}  // namespace

std::string to_string(Region r) {
  switch (r) {
    case Region::Stop:
      return "stop";
    case Region::Continue:
      return "continue";
    case Region::Indifferent:
      return "indifferent";
  }
  return "?";
}

char region_letter(Region r) {
  switch (r) {
    case Region::Stop:
      return 'S';
    case Region::Continue:
      return 'C';
    case Region::Indifferent:
      return 'I';
  }
  return '?';
}

RegionClassification classify_state(const ContinuationEvaluator& eval, const ThresholdPolicy& policy, double x,
                                    double abs_tol) {
  const ContinuationValue j = eval.evaluate(policy, x, true);
  RegionClassification out;
  out.x = x;
  out.immediate_payoff = eval.payoff(x);
  out.continuation_value = j.value;
  out.std_error = j.std_error;
  out.horizon_truncation = j.horizon_truncation;
  const double margin = std::max(3.0 * j.std_error, abs_tol);
  const double gap = out.immediate_payoff - out.continuation_value;
  if (gap > margin) {
    out.label = Region::Stop;
  } else if (gap < -margin) {
    out.label = Region::Continue;
  } else {
    out.label = Region::Indifferent;
  }
  return out;
}

RegionClassification classify_state(const DiffusionModel& model, const DiscountFunction& d, const mc::Payoff& g,
                                    const ThresholdPolicy& policy, double x, const mc::MonteCarloSpec& spec) {
  return classify_state(MonteCarloEvaluator(model, d, g, spec), policy, x);
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 1 || !(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    fail(ErrorCode::InvalidArgument, "uniform_grid needs n >= 1 and finite lo <= hi");
  }
  if (n == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(n));
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) out[i] = lo + step * i;
  out.back() = hi;
  return out;
}

std::vector<double> default_grid(double beta) {
  if (!(beta > 0.0)) fail(ErrorCode::InvalidBeta, "beta must be > 0");
  return uniform_grid(0.0, 4.0 / std::sqrt(beta), 2001);
}

ThresholdPolicy theta_step(const ContinuationEvaluator& eval, const ThresholdPolicy& policy,
                           const std::vector<double>& grid, std::vector<RegionClassification>* labels) {
  check_grid(grid);
  const std::size_t n = grid.size();
  std::vector<RegionClassification> cls(n);
  std::vector<char> stopped(n);
  for (std::size_t i = 0; i < n; ++i) {
    cls[i] = classify_state(eval, policy, grid[i]);
    const Region r = cls[i].label;
    stopped[i] = r == Region::Stop || (r == Region::Indifferent && policy.contains(grid[i]));
  }

  auto kept_edge = [&](std::size_t i) { return cls[i].label == Region::Indifferent; };
  std::vector<Interval> out;
  for (std::size_t i = 0; i < n;) {
    if (!stopped[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && stopped[j + 1]) ++j;
    if (i == j && i > 0 && j + 1 < n && cls[i].label == Region::Stop && cls[i - 1].label == Region::Continue &&
        cls[j + 1].label == Region::Continue) {
      fail(ErrorCode::GridTooCoarse, "isolated stopping state at x = " + std::to_string(grid[i]));
    }
    double lo = grid[i];
    double hi = grid[j];
    if (i > 0 && kept_edge(i) && !stopped[i - 1]) {
      const double old_lo = component(policy, grid[i]).lo;
      if (old_lo > grid[i - 1]) lo = old_lo;
    }
    if (j + 1 < n && kept_edge(j) && !stopped[j + 1]) {
      const double old_hi = component(policy, grid[j]).hi;
      if (old_hi < grid[j + 1]) hi = old_hi;
    }
    out.push_back({lo, hi});
    i = j + 1;
  }
  keep_outside(policy, grid.front(), grid.back(), stopped.front() != 0, stopped.back() != 0, out);
  if (labels) *labels = std::move(cls);
  return ThresholdPolicy(std::move(out));
}

ThresholdPolicy theta_step(const DiffusionModel& model, const DiscountFunction& d, const mc::Payoff& g,
                           const ThresholdPolicy& policy, const std::vector<double>& grid,
                           const mc::MonteCarloSpec& spec) {
  return theta_step(MonteCarloEvaluator(model, d, g, spec), policy, grid);
}

bool same_on_grid(const ThresholdPolicy& a, const ThresholdPolicy& b, const std::vector<double>& grid) {
  return std::all_of(grid.begin(), grid.end(), [&](double y) { return a.contains(y) == b.contains(y); });
}

IterationTrace iterate(const ContinuationEvaluator& eval, const ThresholdPolicy& policy0,
                       const std::vector<double>& grid, int max_steps) {
  if (max_steps < 1) fail(ErrorCode::InvalidArgument, "max_steps must be >= 1");
  IterationTrace trace;
  trace.policies.push_back(policy0);
  while (trace.steps < max_steps) {
    const ThresholdPolicy& prev = trace.policies.back();
    ThresholdPolicy next = theta_step(eval, prev, grid, &trace.last_labels);
    ++trace.steps;
    trace.monotone_ok.push_back(contains_on_grid(next, prev, grid));
    const bool fixed = same_on_grid(next, prev, grid);
    trace.policies.push_back(std::move(next));
    if (fixed) {
      trace.converged = true;
      return trace;
    }
  }
  fail(ErrorCode::NonConvergence,
       "stop set still changing after " + std::to_string(max_steps) + " Theta applications");
}

IterationTrace iterate(const DiffusionModel& model, const DiscountFunction& d, const mc::Payoff& g,
                       const ThresholdPolicy& policy0, const std::vector<double>& grid,
                       const mc::MonteCarloSpec& spec, int max_steps) {
  return iterate(MonteCarloEvaluator(model, d, g, spec), policy0, grid, max_steps);
}

}  // namespace eqstop
