#pragma once

#include <string>
#include <vector>

#include "eqstop/continuation.hpp"
#include "eqstop/discounting.hpp"
#include "eqstop/model.hpp"
#include "eqstop/montecarlo.hpp"
#include "eqstop/stop_set.hpp"

namespace eqstop {

using mc::first_entry;

enum class Region { Stop, Continue, Indifferent };

std::string to_string(Region r);
char region_letter(Region r);

struct RegionClassification {
  double x = 0.0;
  Region label = Region::Indifferent;
  double immediate_payoff = 0.0;
  double continuation_value = 0.0;
  double std_error = 0.0;
  bool horizon_truncation = false;
};

inline constexpr double kIndifferenceTol = 1e-8;

// Label of x against J(0, x; L* tau), with margin max(3 std_error, abs_tol).
RegionClassification classify_state(const ContinuationEvaluator& eval, const ThresholdPolicy& policy, double x,
                                    double abs_tol = kIndifferenceTol);
RegionClassification classify_state(const DiffusionModel& model, const DiscountFunction& d, const mc::Payoff& g,
                                    const ThresholdPolicy& policy, double x, const mc::MonteCarloSpec& spec);

// Uniform grid of n points on [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, int n);
// 2001 points on [0, 4 / sqrt(beta)].
std::vector<double> default_grid(double beta);

// One application of Theta on a sorted grid of |x| states. Grid states
// labelled S, and I states already in the set, form the new stop set; runs
// of such states become closed intervals. A run edge held by an I state next
// to a state that does not stop keeps the old exact endpoint when it lies
// between the two grid points. Beyond the last grid point the old set is kept. Throws
// GridTooCoarse when a single S state is surrounded by C states.
ThresholdPolicy theta_step(const ContinuationEvaluator& eval, const ThresholdPolicy& policy,
                           const std::vector<double>& grid, std::vector<RegionClassification>* labels = nullptr);
ThresholdPolicy theta_step(const DiffusionModel& model, const DiscountFunction& d, const mc::Payoff& g,
                           const ThresholdPolicy& policy, const std::vector<double>& grid,
                           const mc::MonteCarloSpec& spec);

struct IterationTrace {
  std::vector<ThresholdPolicy> policies;
  // monotone_ok[n]: the stop set of policies[n + 1] contains that of
  // policies[n] on the grid.
  std::vector<bool> monotone_ok;
  // Labels of the last step, in grid order.
  std::vector<RegionClassification> last_labels;
  bool converged = false;
  int steps = 0;
};

// Applies theta_step until two consecutive stop sets agree on the grid.
// Throws NonConvergence after max_steps applications.
IterationTrace iterate(const ContinuationEvaluator& eval, const ThresholdPolicy& policy0,
                       const std::vector<double>& grid, int max_steps = 20);
IterationTrace iterate(const DiffusionModel& model, const DiscountFunction& d, const mc::Payoff& g,
                       const ThresholdPolicy& policy0, const std::vector<double>& grid,
                       const mc::MonteCarloSpec& spec, int max_steps = 20);

bool same_on_grid(const ThresholdPolicy& a, const ThresholdPolicy& b, const std::vector<double>& grid);

}  // namespace eqstop
