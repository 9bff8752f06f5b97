#include "eqstop/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>

#include "eqstop/error.hpp"
#include "eqstop/kernels.hpp"

namespace eqstop::numerics {

void QuadratureSpec::validate() const {
  if (node_count < 8) fail(ErrorCode::InvalidArgument, "quadrature node_count must be >= 8");
  if (!(abs_tol > 0.0)) fail(ErrorCode::InvalidArgument, "quadrature abs_tol must be > 0");
  if (!(truncation > 0.0)) fail(ErrorCode::InvalidArgument, "quadrature truncation must be > 0");
}

void RootSpec::validate() const {
  if (!(bracket_lo < bracket_hi)) fail(ErrorCode::InvalidArgument, "root bracket must satisfy lo < hi");
  if (!(x_tol > 0.0) || !(f_tol > 0.0)) fail(ErrorCode::InvalidArgument, "root tolerances must be > 0");
  if (max_iter <= 0) fail(ErrorCode::InvalidArgument, "root max_iter must be positive");
}

namespace {

// Newton iteration on the three-term recurrence, seeded with the usual
// asymptotic guesses for the Laguerre zeros.
GaussLaguerreRule build_rule(int n) {
  GaussLaguerreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double nd = n;
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * nd);
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * nd);
    } else {
      const double ai = i - 1;
      z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - rule.nodes[i - 2]);
    }
    double p1 = 0.0, p2 = 0.0, pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      p1 = 1.0;
      p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
      }
      pp = (nd * p1 - nd * p2) / z;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::abs(z)) break;
    }
    rule.nodes[i] = z;
    const double denom = (pp * nd) * p2;
    rule.weights[i] = std::isfinite(denom) ? -1.0 / denom : 0.0;
  }
  return rule;
}

double gauss_laguerre(const RealFunction& f, int n, std::vector<double>& scratch) {
  const GaussLaguerreRule& rule = gauss_laguerre_rule(n);
  scratch.resize(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(rule.nodes[i]);
    if (!std::isfinite(v)) {
      // Negligible-weight nodes far in the tail may still overflow f.
      if (rule.weights[i] == 0.0) {
        scratch[i] = 0.0;
        continue;
      }
      fail(ErrorCode::NonFinite, "integrand not finite at s=" + std::to_string(rule.nodes[i]));
    }
    scratch[i] = v;
  }
  return kernels::striped_dot(rule.weights, scratch);
}

IntegralResult adaptive(const RealFunction& f, const QuadratureSpec& spec) {
  auto integrand = [&](double u) {
    const double s = u * u;
    const double v = f(s);
    if (!std::isfinite(v)) fail(ErrorCode::NonFinite, "integrand not finite at s=" + std::to_string(s));
    return 2.0 * u * std::exp(-s) * v;
  };
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, std::sqrt(spec.truncation), 18, spec.abs_tol * 0.1, &error);
  if (!std::isfinite(value)) fail(ErrorCode::NonFinite, "adaptive quadrature produced a non-finite value");
  if (error > spec.abs_tol) {
    fail(ErrorCode::ToleranceNotMet,
         "adaptive quadrature error estimate " + std::to_string(error) + " exceeds abs_tol");
  }
  return {value, error, QuadratureMethod::AdaptiveTruncated};
}

}  // namespace

const GaussLaguerreRule& gauss_laguerre_rule(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const GaussLaguerreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const GaussLaguerreRule>(build_rule(n));
  return *slot;
}

IntegralResult integrate_exp_weight_detailed(const RealFunction& f, const QuadratureSpec& spec) {
  spec.validate();
  if (spec.method == QuadratureMethod::AdaptiveTruncated) return adaptive(f, spec);

  thread_local std::vector<double> scratch;
  const double coarse = gauss_laguerre(f, spec.node_count, scratch);
  const double fine = gauss_laguerre(f, 2 * spec.node_count, scratch);
  const double estimate = std::abs(fine - coarse);
  if (estimate <= spec.abs_tol) return {fine, estimate, QuadratureMethod::GaussLaguerre};
  return adaptive(f, spec);
}

double integrate_exp_weight(const RealFunction& f, const QuadratureSpec& spec) {
  return integrate_exp_weight_detailed(f, spec).value;
}

double find_root(const RealFunction& g, const RootSpec& spec) {
  spec.validate();
  auto wrapped = [&](double x) {
    const double v = g(x);
    if (!std::isfinite(v)) fail(ErrorCode::NonFinite, "root objective not finite at x=" + std::to_string(x));
    return std::abs(v) <= spec.f_tol ? 0.0 : v;
  };
  const double flo = wrapped(spec.bracket_lo);
  if (flo == 0.0) return spec.bracket_lo;
  const double fhi = wrapped(spec.bracket_hi);
  if (fhi == 0.0) return spec.bracket_hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    fail(ErrorCode::NoSignChange, "objective has the same sign at both ends of [" +
                                      std::to_string(spec.bracket_lo) + ", " +
                                      std::to_string(spec.bracket_hi) + "]");
  }
  auto tol = [&](double a, double b) { return std::abs(b - a) <= spec.x_tol; };
  std::uintmax_t iters = static_cast<std::uintmax_t>(spec.max_iter);
  const auto [a, b] = boost::math::tools::toms748_solve(wrapped, spec.bracket_lo, spec.bracket_hi,
                                                        flo, fhi, tol, iters);
  if (a != b && !tol(a, b)) {
    fail(ErrorCode::MaxIterExceeded, "root finder did not converge in " + std::to_string(spec.max_iter) +
                                         " iterations");
  }
  return 0.5 * (a + b);
}

double sech(double y) {
  const double t = std::exp(-std::abs(y));
  return 2.0 * t / (1.0 + t * t);
}

double cosh_ratio(double num, double den) {
  const double an = std::abs(num), ad = std::abs(den);
  return std::exp(an - ad) * (1.0 + std::exp(-2.0 * an)) / (1.0 + std::exp(-2.0 * ad));
}

double sinh_cosh_ratio(double num, double den) {
  const double an = std::abs(num), ad = std::abs(den);
  const double mag = std::exp(an - ad) * (-std::expm1(-2.0 * an)) / (1.0 + std::exp(-2.0 * ad));
  return num < 0.0 ? -mag : mag;
}

double sinh_ratio(double num, double den) {
  if (den < 1e-8) return den > 0.0 ? num / den : 1.0;
  return std::exp(num - den) * std::expm1(-2.0 * num) / std::expm1(-2.0 * den);
}

}  // namespace eqstop::numerics
