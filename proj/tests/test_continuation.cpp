#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "eqstop/continuation.hpp"
#include "eqstop/error.hpp"
#include "eqstop/hitting.hpp"

using namespace eqstop;

namespace {

double abs_payoff(double x) { return std::abs(x); }

mc::MonteCarloSpec spec_with(std::int64_t n, double horizon) {
  mc::MonteCarloSpec s;
  s.n_paths = n;
  s.horizon = horizon;
  return s;
}

}  // namespace

TEST(AnalyticEvaluator, HyperbolicThresholdIsEta) {
  const BrownianAnalyticEvaluator eval(1.0, DiscountFunction::hyperbolic(1.0), abs_payoff);
  const hitting::EtaContext ctx;
  for (double a : {0.5, 1.0, 1.5}) {
    for (double x : {0.0, 0.3 * a, -0.6 * a}) {
      const auto v = eval.evaluate(ThresholdPolicy::threshold(a), x, true);
      EXPECT_NEAR(v.value, hitting::eta(ctx, std::abs(x), a), 1e-12);
      EXPECT_EQ(v.std_error, 0.0);
    }
  }
}

TEST(AnalyticEvaluator, ExponentialClosedForm) {
  const BrownianAnalyticEvaluator eval(1.0, DiscountFunction::exponential(0.5), abs_payoff);
  const auto v = eval.evaluate(ThresholdPolicy::threshold(2.0), 0.7, true);
  EXPECT_NEAR(v.value, 2.0 * std::cosh(0.7) / std::cosh(2.0), 1e-14);
  const BrownianAnalyticEvaluator q(1.0, DiscountFunction::quasi_hyperbolic(0.6, 0.5), abs_payoff);
  EXPECT_NEAR(q.evaluate(ThresholdPolicy::threshold(2.0), 0.7, true).value, 0.6 * v.value, 1e-14);
}

TEST(AnalyticEvaluator, VolatilityRescalesRate) {
  const BrownianAnalyticEvaluator eval(2.0, DiscountFunction::exponential(2.0), abs_payoff);
  // lambda = sqrt(2 rho) / sigma = 1
  EXPECT_NEAR(eval.evaluate(ThresholdPolicy::threshold(1.0), 0.0, true).value, 1.0 / std::cosh(1.0), 1e-14);
}

TEST(AnalyticEvaluator, InsideTheSetIsImmediate) {
  const BrownianAnalyticEvaluator eval(1.0, DiscountFunction::hyperbolic(1.0), abs_payoff);
  for (double x : {1.0, -1.0, 1.7}) {
    for (bool strict : {false, true}) {
      EXPECT_EQ(eval.evaluate(ThresholdPolicy::threshold(1.0), x, strict).value, std::abs(x));
    }
  }
}

TEST(AnalyticEvaluator, OneSidedGap) {
  const BrownianAnalyticEvaluator eval(1.0, DiscountFunction::exponential(1.0), abs_payoff);
  const ThresholdPolicy low({{0.0, 0.2}});
  EXPECT_NEAR(eval.evaluate(low, 0.5, true).value, 0.2 * std::exp(-std::sqrt(2.0) * 0.3), 1e-14);
  EXPECT_NEAR(eval.evaluate(low, -0.5, true).value, 0.2 * std::exp(-std::sqrt(2.0) * 0.3), 1e-14);
  EXPECT_EQ(eval.evaluate(ThresholdPolicy::never_stop(), 0.5, true).value, 0.0);
}

TEST(AnalyticEvaluator, AgreesWithSimulationOnABand) {
  const ThresholdPolicy band({{0.0, 0.2}, {1.0, std::numeric_limits<double>::infinity()}});
  const auto d = DiscountFunction::hyperbolic(1.0);
  const BrownianAnalyticEvaluator exact(1.0, d, abs_payoff);
  const MonteCarloEvaluator sim(DiffusionModel::brownian(), d, abs_payoff, spec_with(40000, 20.0));
  for (double x : {0.5, -0.8}) {
    const auto a = exact.evaluate(band, x, true);
    const auto m = sim.evaluate(band, x, true);
    EXPECT_NEAR(m.value, a.value, 3.0 * m.std_error) << x;
  }
}

TEST(AnalyticEvaluator, AgreesWithSimulationForAsymmetricPayoff) {
  auto g = [](double x) { return x + 2.0; };
  const auto d = DiscountFunction::exponential(0.3);
  const BrownianAnalyticEvaluator exact(1.0, d, g);
  const MonteCarloEvaluator sim(DiffusionModel::brownian(), d, g, spec_with(40000, 40.0));
  const auto policy = ThresholdPolicy::threshold(1.0);
  const auto a = exact.evaluate(policy, 0.3, true);
  const auto m = sim.evaluate(policy, 0.3, true);
  EXPECT_NEAR(m.value, a.value, 3.0 * m.std_error);
  const double lam = std::sqrt(0.6);
  const double expected = 3.0 * std::sinh(lam * 1.3) / std::sinh(lam * 2.0) + 1.0 * std::sinh(lam * 0.7) / std::sinh(lam * 2.0);
  EXPECT_NEAR(a.value, expected, 1e-14);
}

TEST(AnalyticEvaluator, RejectsCustomDiscount) {
  EXPECT_THROW(BrownianAnalyticEvaluator(1.0, DiscountFunction::custom([](double s) { return 1.0 / (1.0 + s); }),
                                         abs_payoff),
               Error);
  EXPECT_THROW(BrownianAnalyticEvaluator(0.0, DiscountFunction::hyperbolic(1.0), abs_payoff), Error);
}

TEST(MonteCarloEvaluator, SeedsDependOnStateOnly) {
  const MonteCarloEvaluator sim(DiffusionModel::brownian(), DiscountFunction::hyperbolic(1.0), abs_payoff,
                                spec_with(500, 10.0));
  const auto policy = ThresholdPolicy::threshold(1.0);
  const auto first = sim.evaluate(policy, 0.4, true);
  sim.evaluate(policy, 0.2, true);
  const auto again = sim.evaluate(policy, 0.4, true);
  EXPECT_EQ(first.value, again.value);
  EXPECT_NE(first.value, sim.evaluate(policy, -0.4, true).value);
}
