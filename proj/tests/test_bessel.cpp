#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "eqstop/bessel_equilibrium.hpp"
#include "eqstop/error.hpp"
#include "eqstop/hitting.hpp"

using namespace eqstop;
using namespace eqstop::bessel;

namespace {

constexpr double kAStar = 0.94647502210745;
constexpr double kXStar1 = 0.92195068344190;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an eqstop::Error";
  return ErrorCode::InvalidArgument;
}

BesselProblem with_beta(double beta) {
  BesselProblem p;
  p.beta = beta;
  return p;
}

// eta(x, a) - x by composite Simpson on u = sqrt(s) over [0, 8], independent
// of the library quadrature.
double eta_minus_x_simpson(double x, double a) {
  const int n = 40000;
  const double h = 8.0 / n;
  auto f = [&](double u) {
    const double y = std::sqrt(2.0) * u;
    return 2.0 * u * std::exp(-u * u) * std::cosh(x * y) / std::cosh(a * y);
  };
  double sum = f(0.0) + f(8.0);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return a * sum * h / 3.0 - x;
}

double bisect(const std::function<double(double)>& g, double lo, double hi) {
  double glo = g(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(Naive, ThresholdAndBoundary) {
  const BesselProblem p;
  EXPECT_DOUBLE_EQ(naive_threshold(p), 1.0);
  EXPECT_DOUBLE_EQ(naive_threshold(with_beta(4.0)), 0.5);
  EXPECT_DOUBLE_EQ(naive_boundary(p, 0.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(naive_boundary(p, 0.0, 3.0), 2.0);
  EXPECT_DOUBLE_EQ(naive_boundary(p, 2.0, 5.0), 2.0);
  EXPECT_EQ(code_of([&] { naive_boundary(p, 1.0, 0.5); }), ErrorCode::TimeOrder);
  EXPECT_EQ(code_of([&] { naive_boundary(p, -1.0, 0.5); }), ErrorCode::NegativeTime);
  EXPECT_EQ(code_of([] { naive_threshold(with_beta(0.0)); }), ErrorCode::InvalidBeta);
  EXPECT_EQ(code_of([] { naive_threshold(with_beta(-1.0)); }), ErrorCode::InvalidBeta);
}

TEST(AStar, Value) {
  const double a = solve_a_star(BesselProblem{});
  EXPECT_NEAR(a, kAStar, 1e-9);
  EXPECT_NEAR(hitting::k(BesselProblem{}.eta_context(), a), 1.0, 1e-9);
  EXPECT_EQ(optimal_equilibrium(BesselProblem{}), a);
}

TEST(AStar, ScalesWithSqrtBeta) {
  const double ref = solve_a_star(BesselProblem{});
  for (double beta : {0.25, 4.0}) EXPECT_NEAR(solve_a_star(with_beta(beta)) * std::sqrt(beta), ref, 1e-6) << beta;
}

TEST(XStar, Values) {
  const BesselProblem p;
  EXPECT_NEAR(solve_x_star(p, 1.0), kXStar1, 1e-9);
  EXPECT_NEAR(solve_x_star(p, 1.5), 0.7495126587, 1e-8);
  EXPECT_NEAR(solve_x_star(p, 2.0), 0.6358740076, 1e-8);
}

TEST(XStar, AgreesWithBisectionOracle) {
  const BesselProblem p;
  for (double a : {1.0, 1.2, 2.5}) {
    const double oracle = bisect([a](double x) { return eta_minus_x_simpson(x, a); }, 1e-6, a - 1e-6);
    EXPECT_NEAR(solve_x_star(p, a), oracle, 1e-8) << a;
  }
}

TEST(XStar, NoInteriorCrossingAtOrBelowAStar) {
  const BesselProblem p;
  EXPECT_EQ(code_of([&] { solve_x_star(p, 0.9); }), ErrorCode::NoInteriorCrossing);
  EXPECT_EQ(code_of([&] { solve_x_star(p, kAStar); }), ErrorCode::NoInteriorCrossing);
  for (double x = 0.05; x < 0.9; x += 0.1) EXPECT_GT(eta_minus_x_simpson(x, 0.9), 0.0) << x;
}

TEST(XStar, StopsAtALowerPayoff) {
  const BesselProblem p;
  for (double a : {0.95, 1.0, 1.5, 3.0}) {
    const double xs = solve_x_star(p, a);
    EXPECT_LT(xs, a);
    EXPECT_LT(xs, kAStar + 1e-9);
  }
}

TEST(Theta, FixedPointsAreExactlyTheThresholdsUpToAStar) {
  const BesselProblem p;
  for (double a = 0.1; a < 0.945; a += 0.0703) EXPECT_EQ(apply_theta_to_threshold(p, a), ThresholdPolicy::threshold(a)) << a;
  for (double a = 0.95; a <= 2.0; a += 0.0875) {
    const auto next = apply_theta_to_threshold(p, a);
    EXPECT_NE(next, ThresholdPolicy::threshold(a)) << a;
    EXPECT_LT(*next.threshold_value(), a);
  }
}

TEST(Iteration, FromNaiveThreshold) {
  const auto r = iterate_to_equilibrium(BesselProblem{}, 1.0);
  EXPECT_NEAR(r.fixed_point, kXStar1, 1e-9);
  EXPECT_EQ(r.iterations_to_equilibrium, 1);
  EXPECT_EQ(r.formal_theta_applications, 2);
  EXPECT_NEAR(r.x_star_of_naive, kXStar1, 1e-9);
  EXPECT_DOUBLE_EQ(r.naive_threshold, 1.0);
  EXPECT_NEAR(r.a_star, kAStar, 1e-9);
}

TEST(Iteration, FromAnEquilibriumThreshold) {
  const auto r = iterate_to_equilibrium(BesselProblem{}, 0.3);
  EXPECT_EQ(r.fixed_point, 0.3);
  EXPECT_EQ(r.iterations_to_equilibrium, 0);
  EXPECT_EQ(r.formal_theta_applications, 1);
}

TEST(Iteration, TwoApplicationsFromAnyThreshold) {
  const BesselProblem p;
  for (double a : {0.0, 0.5, 0.94, 0.95, 1.3, 2.0, 5.0}) {
    const auto r = iterate_to_equilibrium(p, a);
    EXPECT_LE(r.formal_theta_applications, 2) << a;
    EXPECT_LE(r.fixed_point, kAStar + 1e-9);
  }
}

TEST(Dominance, OptimalThresholdBeatsSmallerOnes) {
  const hitting::EtaContext ctx;
  for (double a = 0.1; a < kAStar; a += 0.1) {
    for (double x = 0.0; x <= a; x += a / 10.0) {
      EXPECT_GE(hitting::eta(ctx, x, kAStar), hitting::eta(ctx, x, a) - 1e-12) << x << " " << a;
    }
  }
}

TEST(ValueFunction, Examples) {
  const BesselProblem p;
  EXPECT_NEAR(value_function_w(p, 0, 0, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(value_function_w(p, 0, 0, std::nextafter(1.0, 0.0)), 1.0, 1e-12);
  EXPECT_NEAR(value_function_w(p, 0, 0, 0.0), std::exp(-0.5), 1e-15);
  EXPECT_DOUBLE_EQ(value_function_w(p, 0, 3, 4.0), 1.0);
  EXPECT_EQ(code_of([&] { value_function_w(p, 1.0, 0.0, 0.0); }), ErrorCode::TimeOrder);
}

TEST(ValueFunction, HeatEquationInContinuationRegion) {
  const double h = 1e-4;
  for (double beta : {0.5, 1.0, 2.0}) {
    const BesselProblem p = with_beta(beta);
    for (int i = 1; i <= 20; ++i) {
      const double s = 0.25 * i;
      const double b = naive_boundary(p, 0.0, s);
      for (int j = 0; j < 20; ++j) {
        const double x = (b - 2 * h) * j / 20.0;
        auto w = [&](double ss, double xx) { return value_function_w(p, 0.0, ss, xx); };
        const double ws = (w(s + h, x) - w(s - h, x)) / (2 * h);
        const double wxx = (w(s, x + h) - 2 * w(s, x) + w(s, x - h)) / (h * h);
        EXPECT_LT(std::abs(ws + 0.5 * wxx), 1e-5) << beta << " " << s << " " << x;
      }
    }
  }
}

TEST(ValueFunction, ObstacleAndSmoothFit) {
  const double h = 1e-4;
  const BesselProblem p;
  for (double s : {0.0, 0.5, 2.0, 7.0}) {
    const double b = naive_boundary(p, 0.0, s);
    const double e = 1.0 + s;
    for (double x = -3 * b; x <= 3 * b; x += b / 37.0) {
      const double w = value_function_w(p, 0.0, s, x);
      EXPECT_GE(w, std::abs(x) / e - 1e-15);
      if (std::abs(x) >= b) {
        EXPECT_EQ(w, std::abs(x) / e);
      } else if (std::abs(x) < b - 1e-9) {
        EXPECT_GT(w, std::abs(x) / e);
      }
    }
    auto w = [&](double x) { return value_function_w(p, 0.0, s, x); };
    // Second-order one-sided differences from each side of the boundary.
    const double left = (3 * w(b) - 4 * w(b - h) + w(b - 2 * h)) / (2 * h);
    const double right = (-3 * w(b) + 4 * w(b + h) - w(b + 2 * h)) / (2 * h);
    EXPECT_NEAR(left, right, 1e-5) << s;
    EXPECT_NEAR(w(std::nextafter(b, 0.0)), w(b), 1e-12);
  }
}
