#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <limits>

#include "eqstop/bessel_equilibrium.hpp"
#include "eqstop/error.hpp"
#include "eqstop/numerics.hpp"
#include "eqstop/policy_engine.hpp"

using namespace eqstop;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kXStar1 = 0.92195068344190;

double abs_payoff(double x) { return std::abs(x); }

BrownianAnalyticEvaluator hyperbolic_eval(double beta = 1.0) {
  return BrownianAnalyticEvaluator(1.0, DiscountFunction::hyperbolic(beta), abs_payoff);
}

// Continuation values scripted by a function of the state.
class ScriptedEvaluator final : public ContinuationEvaluator {
 public:
  explicit ScriptedEvaluator(std::function<double(double)> j) : j_(std::move(j)) {}
  double payoff(double) const override { return 1.0; }
  ContinuationValue evaluate(const ThresholdPolicy&, double x, bool) const override { return {j_(x), 0.0, false}; }

 private:
  std::function<double(double)> j_;
};

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an eqstop::Error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Regions, Names) {
  EXPECT_EQ(region_letter(Region::Stop), 'S');
  EXPECT_EQ(region_letter(Region::Continue), 'C');
  EXPECT_EQ(region_letter(Region::Indifferent), 'I');
  EXPECT_EQ(to_string(Region::Indifferent), "indifferent");
}

TEST(ClassifyState, SimulatedBesselExamples) {
  const auto model = DiffusionModel::brownian();
  const auto d = DiscountFunction::hyperbolic(1.0);
  const mc::MonteCarloSpec spec;
  EXPECT_EQ(classify_state(model, d, abs_payoff, ThresholdPolicy::threshold(1.0), 1.0, spec).label, Region::Stop);
  EXPECT_EQ(classify_state(model, d, abs_payoff, ThresholdPolicy::threshold(0.5), 0.2, spec).label,
            Region::Continue);
  const auto between = classify_state(model, d, abs_payoff, ThresholdPolicy::threshold(1.0), 0.96, spec);
  EXPECT_EQ(between.label, Region::Stop);
  EXPECT_GT(between.std_error, 0.0);
}

TEST(ClassifyState, AnalyticBesselExamples) {
  const auto eval = hyperbolic_eval();
  const auto t1 = ThresholdPolicy::threshold(1.0);
  EXPECT_EQ(classify_state(eval, ThresholdPolicy::threshold(0.5), 0.2).label, Region::Continue);
  EXPECT_EQ(classify_state(eval, t1, 0.96).label, Region::Stop);
  EXPECT_EQ(classify_state(eval, t1, 0.90).label, Region::Continue);
  EXPECT_EQ(classify_state(eval, t1, 1.3).label, Region::Indifferent);
  // L* from the boundary is zero for the continuous-time process.
  EXPECT_EQ(classify_state(eval, t1, 1.0).label, Region::Indifferent);
}

TEST(ClassifyState, MarginRule) {
  const ScriptedEvaluator eval([](double x) { return 1.0 + x; });
  EXPECT_EQ(classify_state(eval, {}, 1e-9).label, Region::Indifferent);
  EXPECT_EQ(classify_state(eval, {}, 2e-8).label, Region::Continue);
  EXPECT_EQ(classify_state(eval, {}, -2e-8).label, Region::Stop);
  EXPECT_EQ(classify_state(eval, {}, -2e-8, 1e-7).label, Region::Indifferent);
}

TEST(ClassifyState, MorePathsNeverFlipClearLabels) {
  const auto model = DiffusionModel::brownian();
  const auto d = DiscountFunction::hyperbolic(1.0);
  const auto exact = hyperbolic_eval();
  const auto policy = ThresholdPolicy::threshold(1.0);
  mc::MonteCarloSpec small;
  small.n_paths = 2000;
  small.horizon = 50.0;
  mc::MonteCarloSpec large = small;
  large.n_paths = 20000;
  for (double x : {0.2, 0.5, 0.8, 0.96, 0.99}) {
    const auto coarse = classify_state(model, d, abs_payoff, policy, x, small);
    const auto fine = classify_state(model, d, abs_payoff, policy, x, large);
    const auto truth = classify_state(exact, policy, x);
    if (std::abs(truth.immediate_payoff - truth.continuation_value) <= 4.0 * coarse.std_error) continue;
    EXPECT_FALSE(coarse.label == Region::Stop && fine.label == Region::Continue) << x;
    EXPECT_FALSE(coarse.label == Region::Continue && fine.label == Region::Stop) << x;
  }
}

TEST(Grid, Uniform) {
  const auto g = uniform_grid(0.0, 4.0, 2001);
  EXPECT_EQ(g.size(), 2001u);
  EXPECT_EQ(g.back(), 4.0);
  EXPECT_NEAR(g[1] - g[0], 0.002, 1e-15);
  EXPECT_EQ(default_grid(4.0).back(), 2.0);
  EXPECT_EQ(uniform_grid(1.0, 1.0, 1), std::vector<double>{1.0});
  EXPECT_THROW(uniform_grid(0, 1, 0), Error);
}

TEST(ThetaStep, NaiveThresholdMovesToXStar) {
  const auto eval = hyperbolic_eval();
  const auto grid = default_grid(1.0);
  const auto next = theta_step(eval, ThresholdPolicy::threshold(1.0), grid);
  ASSERT_TRUE(next.threshold_value().has_value());
  EXPECT_NEAR(*next.threshold_value(), kXStar1, 0.002);
}

TEST(ThetaStep, EquilibriumThresholdUnchanged) {
  const auto eval = hyperbolic_eval();
  const auto grid = default_grid(1.0);
  for (double a : {0.5, 0.5003, 0.9}) {
    const auto p = ThresholdPolicy::threshold(a);
    EXPECT_EQ(theta_step(eval, p, grid), p) << a;
  }
  EXPECT_EQ(theta_step(eval, ThresholdPolicy::stop_everywhere(), grid), ThresholdPolicy::stop_everywhere());
}

TEST(ThetaStep, KeepsOldEndpointBetweenGridPoints) {
  const std::vector<double> grid = uniform_grid(0.0, 1.0, 11);
  const ScriptedEvaluator eval([](double x) { return x >= 0.55 ? 1.0 : 1.5; });
  EXPECT_EQ(theta_step(eval, ThresholdPolicy::threshold(0.55), grid), ThresholdPolicy::threshold(0.55));
}

TEST(ThetaStep, KeepsOldSetBeyondTheGrid) {
  const std::vector<double> grid = uniform_grid(0.0, 1.0, 11);
  const ThresholdPolicy p({{0.3, 0.45}, {2.0, kInf}});
  const ScriptedEvaluator indifferent([](double) { return 1.0; });
  EXPECT_EQ(theta_step(indifferent, p, grid), p);
  const ThresholdPolicy across({{0.75, 3.0}});
  EXPECT_EQ(theta_step(indifferent, across, grid), across);
}

TEST(ThetaStep, StopAndContinueRegionsFromLabels) {
  const std::vector<double> grid = uniform_grid(0.0, 1.0, 11);
  std::vector<RegionClassification> labels;
  const ScriptedEvaluator eval([](double x) { return x < 0.25 || x > 0.65 ? 0.5 : 1.5; });
  const auto next = theta_step(eval, ThresholdPolicy::never_stop(), grid, &labels);
  ASSERT_EQ(labels.size(), grid.size());
  EXPECT_EQ(labels[0].label, Region::Stop);
  EXPECT_EQ(labels[5].label, Region::Continue);
  EXPECT_EQ(next, ThresholdPolicy({{0.0, grid[2]}, {grid[7], 1.0}}));
}

TEST(ThetaStep, IsolatedStopStateIsTooCoarse) {
  const std::vector<double> grid = uniform_grid(0.0, 1.0, 11);
  const ScriptedEvaluator eval([](double x) { return std::abs(x - 0.5) < 1e-9 ? 0.5 : 1.5; });
  EXPECT_EQ(code_of([&] { theta_step(eval, ThresholdPolicy::never_stop(), grid); }), ErrorCode::GridTooCoarse);
}

TEST(ThetaStep, RejectsBadGrids) {
  const auto eval = hyperbolic_eval();
  EXPECT_THROW(theta_step(eval, ThresholdPolicy::threshold(1.0), {}), Error);
  EXPECT_THROW(theta_step(eval, ThresholdPolicy::threshold(1.0), {0.0, 0.5, 0.5}), Error);
}

TEST(ThetaStep, AgreesWithAnalyticXStar) {
  const auto eval = hyperbolic_eval();
  const auto grid = default_grid(1.0);
  const bessel::BesselProblem p;
  for (double a : {1.0, 1.5, 2.0}) {
    const auto next = theta_step(eval, ThresholdPolicy::threshold(a), grid);
    ASSERT_TRUE(next.threshold_value().has_value());
    EXPECT_NEAR(*next.threshold_value(), bessel::solve_x_star(p, a), 0.002) << a;
  }
}

TEST(Iterate, FromNaiveThreshold) {
  const auto trace = iterate(hyperbolic_eval(), ThresholdPolicy::threshold(1.0), default_grid(1.0));
  EXPECT_TRUE(trace.converged);
  EXPECT_LE(trace.steps, 2);
  ASSERT_EQ(trace.policies.size(), static_cast<std::size_t>(trace.steps) + 1);
  EXPECT_EQ(trace.policies[trace.policies.size() - 1], trace.policies[trace.policies.size() - 2]);
  EXPECT_NEAR(*trace.policies.back().threshold_value(), kXStar1, 0.002);
}

TEST(Iterate, StopSetGrowsAfterTheFirstStep) {
  const auto grid = default_grid(1.0);
  for (double a : {1.0, 1.5, 2.0, 3.0}) {
    const auto trace = iterate(hyperbolic_eval(), ThresholdPolicy::threshold(a), grid);
    for (std::size_t n = 1; n < trace.monotone_ok.size(); ++n) EXPECT_TRUE(trace.monotone_ok[n]) << a << " " << n;
  }
}

TEST(Iterate, FixedPointReproducesItsLabels) {
  const auto grid = default_grid(1.0);
  const auto eval = hyperbolic_eval();
  const auto trace = iterate(eval, ThresholdPolicy::threshold(1.5), grid);
  const auto& eq = trace.policies.back();
  std::vector<RegionClassification> labels;
  const auto again = theta_step(eval, eq, grid, &labels);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const bool stop_now = labels[i].label == Region::Stop || (labels[i].label == Region::Indifferent && eq.contains(grid[i]));
    EXPECT_EQ(stop_now, eq.contains(grid[i])) << grid[i];
  }
  EXPECT_EQ(again, eq);
}

TEST(Iterate, NonConvergence) {
  // Alternates between stopping everywhere and never stopping.
  class Flip final : public ContinuationEvaluator {
   public:
    double payoff(double) const override { return 1.0; }
    ContinuationValue evaluate(const ThresholdPolicy& p, double, bool) const override {
      return {p.empty() ? 0.5 : 1.5, 0.0, false};
    }
  };
  EXPECT_EQ(code_of([] { iterate(Flip{}, ThresholdPolicy::never_stop(), uniform_grid(0, 1, 5), 5); }),
            ErrorCode::NonConvergence);
}

namespace {

// Optimal stopping of |x + W| under e^{-rho t} by value iteration on the
// binomial lattice with spacing sqrt(h); returns the smallest lattice state
// where stopping is optimal.
double exponential_threshold_by_value_iteration(double rho, double h) {
  const double dx = std::sqrt(h);
  const int n = static_cast<int>(std::ceil(4.0 / dx));
  std::vector<double> v(n + 1), next(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = i * dx;
  const double disc = std::exp(-rho * h);
  for (int it = 0; it < 200000; ++it) {
    double change = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double left = v[i == 0 ? 1 : i - 1];  // reflect: |x| is symmetric
      const double right = i == n ? (n + 1) * dx : v[i + 1];
      next[i] = std::max(i * dx, disc * 0.5 * (left + right));
      change = std::max(change, std::abs(next[i] - v[i]));
    }
    v.swap(next);
    if (change < 1e-14) break;
  }
  for (int i = 0; i <= n; ++i) {
    if (v[i] <= i * dx + 1e-13) return i * dx;
  }
  return kInf;
}

}  // namespace

TEST(ExponentialDiscount, ClassicalThresholdIsAFixedPoint) {
  const double rho = 1.0;
  const double oracle = exponential_threshold_by_value_iteration(rho, 1e-4);
  // Smooth fit of a cosh(sqrt(2 rho) x) / cosh(sqrt(2 rho) a) against x.
  const double c = std::sqrt(2.0 * rho);
  const double b = numerics::find_root([c](double a) { return a * c * std::tanh(a * c) - 1.0; },
                                       numerics::RootSpec{}.with_bracket(0.01, 3.0));
  EXPECT_NEAR(b, 0.84830090177090, 1e-9);
  EXPECT_NEAR(oracle, b, 0.02);

  const BrownianAnalyticEvaluator eval(1.0, DiscountFunction::exponential(rho), abs_payoff);
  const auto trace = iterate(eval, ThresholdPolicy::threshold(b), default_grid(1.0));
  EXPECT_EQ(trace.steps, 1);
  EXPECT_EQ(trace.policies.back(), ThresholdPolicy::threshold(b));
}
