#include "eqstop/continuation.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "eqstop/error.hpp"

namespace eqstop {

MonteCarloEvaluator::MonteCarloEvaluator(DiffusionModel model, DiscountFunction d, mc::Payoff g,
                                         mc::MonteCarloSpec spec)
    : model_(std::move(model)), d_(std::move(d)), g_(std::move(g)), spec_(spec) {
  if (!g_) fail(ErrorCode::InvalidArgument, "payoff must be set");
  spec_.validate();
}

ContinuationValue MonteCarloEvaluator::evaluate(const ThresholdPolicy& policy, double x, bool strict) const {
  mc::MonteCarloSpec spec = spec_;
  spec.master_seed = mc::stream_seed(spec_.master_seed, std::bit_cast<std::uint64_t>(x), 2);
  const mc::JEstimate est = mc::estimate_J(model_, d_, g_, policy, x, strict, spec);
  return {est.mean, est.std_error, est.horizon_truncation()};
}

BrownianAnalyticEvaluator::BrownianAnalyticEvaluator(double sigma, DiscountFunction d, mc::Payoff g,
                                                     numerics::QuadratureSpec quad)
    : sigma_(sigma), d_(std::move(d)), g_(std::move(g)), quad_(quad) {
  if (!(sigma > 0.0)) fail(ErrorCode::InvalidArgument, "sigma must be > 0");
  if (!g_) fail(ErrorCode::InvalidArgument, "payoff must be set");
  if (d_.family() == DiscountFamily::Custom) {
    fail(ErrorCode::Unsupported, "analytic continuation values need a parametric discount");
  }
  quad_.validate();
}

double BrownianAnalyticEvaluator::discounted_exit_payoff(double x, double lo, double hi, double q) const {
  const double lam = std::sqrt(2.0 * q) / sigma_;
  const bool lo_finite = std::isfinite(lo);
  const bool hi_finite = std::isfinite(hi);
  if (!lo_finite && !hi_finite) return 0.0;
  if (!lo_finite) return g_(hi) * std::exp(-lam * (hi - x));
  if (!hi_finite) return g_(lo) * std::exp(-lam * (x - lo));
  const double g_lo = g_(lo);
  const double g_hi = g_(hi);
  if (lo == -hi && g_lo == g_hi) return g_hi * numerics::cosh_ratio(lam * x, lam * hi);
  const double width = lam * (hi - lo);
  return g_hi * numerics::sinh_ratio(lam * (x - lo), width) + g_lo * numerics::sinh_ratio(lam * (hi - x), width);
}

ContinuationValue BrownianAnalyticEvaluator::evaluate(const ThresholdPolicy& policy, double x,
                                                      [[maybe_unused]] bool strict) const {
  // Both L and L* are immediate from any state of the set.
  if (policy.contains(std::abs(x))) {
    return {g_(x), 0.0, false};
  }
  const auto [lo, hi] = policy.signed_barriers(x);
  switch (d_.family()) {
    case DiscountFamily::Exponential:
      return {discounted_exit_payoff(x, lo, hi, d_.rho()), 0.0, false};
    case DiscountFamily::QuasiHyperbolic:
      return {d_.delta0() * discounted_exit_payoff(x, lo, hi, d_.rho()), 0.0, false};
    case DiscountFamily::Hyperbolic: {
      const double beta = d_.beta();
      const double v = numerics::integrate_exp_weight(
          [&](double s) { return discounted_exit_payoff(x, lo, hi, beta * s); }, quad_);
      return {v, 0.0, false};
    }
    case DiscountFamily::Custom:
      break;
  }
  fail(ErrorCode::Unsupported, "analytic continuation values need a parametric discount");
}

}  // namespace eqstop
