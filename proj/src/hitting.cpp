#include "eqstop/hitting.hpp"

#include <cmath>
#include <string>

#include "eqstop/error.hpp"

namespace eqstop::hitting {

namespace {
void check_domain(double x, double a) {
  if (!(x >= 0.0) || !(a >= 0.0)) fail(ErrorCode::DomainError, "hitting quantities need x, a >= 0");
  if (x > a) {
    fail(ErrorCode::DomainError, "x=" + std::to_string(x) + " exceeds threshold a=" + std::to_string(a));
  }
}
}  // namespace

void EtaContext::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) fail(ErrorCode::InvalidBeta, "beta must be > 0");
  quad.validate();
}

double laplace_hitting(double x, double a, double lam) {
  check_domain(x, a);
  if (!(lam > 0.0)) fail(ErrorCode::DomainError, "lambda must be > 0");
  return numerics::cosh_ratio(x * lam, a * lam);
}

double eta(const EtaContext& ctx, double x, double a) {
  ctx.validate();
  check_domain(x, a);
  if (!(a > 0.0)) fail(ErrorCode::DomainError, "eta needs a > 0");
  if (x == a) return a;
  const double two_beta = 2.0 * ctx.beta;
  const double integral = numerics::integrate_exp_weight(
      [&](double s) {
        const double y = std::sqrt(two_beta * s);
        return numerics::cosh_ratio(x * y, a * y);
      },
      ctx.quad);
  return a * integral;
}

double eta_x(const EtaContext& ctx, double x, double a) {
  ctx.validate();
  check_domain(x, a);
  if (!(a > 0.0)) fail(ErrorCode::DomainError, "eta_x needs a > 0");
  if (x == 0.0) return 0.0;
  const double two_beta = 2.0 * ctx.beta;
  const double integral = numerics::integrate_exp_weight(
      [&](double s) {
        const double y = std::sqrt(two_beta * s);
        return y * numerics::sinh_cosh_ratio(x * y, a * y);
      },
      ctx.quad);
  return a * integral;
}

double k(const EtaContext& ctx, double a) {
  ctx.validate();
  if (!(a >= 0.0)) fail(ErrorCode::DomainError, "k needs a >= 0");
  if (a == 0.0) return 0.0;
  const double two_beta = 2.0 * ctx.beta;
  const double integral = numerics::integrate_exp_weight(
      [&](double s) {
        const double y = std::sqrt(two_beta * s);
        return y * std::tanh(a * y);
      },
      ctx.quad);
  return a * integral;
}

}  // namespace eqstop::hitting
