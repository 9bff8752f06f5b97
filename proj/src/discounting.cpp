#include "eqstop/discounting.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "eqstop/error.hpp"

namespace eqstop {

namespace {
constexpr double kPropertyTol = 1e-12;

std::vector<double> uniform_grid(double grid_max, int grid_n) {
  if (!(grid_max > 0.0) || grid_n < 2) fail(ErrorCode::InvalidArgument, "grid needs grid_max > 0 and grid_n >= 2");
  std::vector<double> grid(grid_n);
  for (int i = 0; i < grid_n; ++i) grid[i] = grid_max * i / (grid_n - 1);
  return grid;
}
}  // namespace

std::string_view to_string(DiscountFamily family) {
  switch (family) {
    case DiscountFamily::Exponential: return "exponential";
    case DiscountFamily::Hyperbolic: return "hyperbolic";
    case DiscountFamily::QuasiHyperbolic: return "quasi_hyperbolic";
    case DiscountFamily::Custom: return "custom";
  }
  return "unknown";
}

DiscountFamily discount_family_from_string(std::string_view name) {
  if (name == "exponential") return DiscountFamily::Exponential;
  if (name == "hyperbolic") return DiscountFamily::Hyperbolic;
  if (name == "quasi_hyperbolic") return DiscountFamily::QuasiHyperbolic;
  if (name == "custom") return DiscountFamily::Custom;
  fail(ErrorCode::InvalidArgument, "unknown discount family '" + std::string(name) + "'");
}

DiscountFunction DiscountFunction::exponential(double rho) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) fail(ErrorCode::InvalidArgument, "exponential rho must be >= 0");
  DiscountFunction d;
  d.family_ = DiscountFamily::Exponential;
  d.rho_ = rho;
  d.name_ = "exponential";
  return d;
}

DiscountFunction DiscountFunction::hyperbolic(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) fail(ErrorCode::InvalidBeta, "hyperbolic beta must be > 0");
  DiscountFunction d;
  d.family_ = DiscountFamily::Hyperbolic;
  d.beta_ = beta;
  d.name_ = "hyperbolic";
  return d;
}

DiscountFunction DiscountFunction::quasi_hyperbolic(double delta0, double rho) {
  if (!(delta0 > 0.0 && delta0 <= 1.0)) fail(ErrorCode::InvalidArgument, "quasi_hyperbolic delta0 must lie in (0, 1]");
  if (!(rho >= 0.0) || !std::isfinite(rho)) fail(ErrorCode::InvalidArgument, "quasi_hyperbolic rho must be >= 0");
  DiscountFunction d;
  d.family_ = DiscountFamily::QuasiHyperbolic;
  d.delta0_ = delta0;
  d.rho_ = rho;
  d.name_ = "quasi_hyperbolic";
  return d;
}

DiscountFunction DiscountFunction::custom(std::function<double(double)> fn, std::string name) {
  if (!fn) fail(ErrorCode::InvalidArgument, "custom discount needs a callable");
  DiscountFunction d;
  d.family_ = DiscountFamily::Custom;
  d.custom_ = std::move(fn);
  d.name_ = std::move(name);
  return d;
}

double DiscountFunction::evaluate(double s) const {
  if (s < 0.0 || std::isnan(s)) fail(ErrorCode::NegativeTime, "discount evaluated at s=" + std::to_string(s));
  switch (family_) {
    case DiscountFamily::Exponential: return std::exp(-rho_ * s);
    case DiscountFamily::Hyperbolic: return 1.0 / (1.0 + beta_ * s);
    case DiscountFamily::QuasiHyperbolic: return s == 0.0 ? 1.0 : delta0_ * std::exp(-rho_ * s);
    case DiscountFamily::Custom: return custom_(s);
  }
  return 0.0;
}

LogSubadditivityReport check_log_subadditive(const DiscountFunction& d, double grid_max, int grid_n) {
  const auto grid = uniform_grid(grid_max, grid_n);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = d(grid[i]);

  LogSubadditivityReport report;
  report.discontinuous_at_zero = !d.continuous_at_zero();
  report.worst_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i; j < grid.size(); ++j) {
      const double gap = values[i] * values[j] - d(grid[i] + grid[j]);
      if (gap > report.worst_violation) {
        report.worst_violation = gap;
        report.witness_s = grid[i];
        report.witness_t = grid[j];
      }
    }
  }
  report.holds = report.worst_violation <= kPropertyTol;
  return report;
}

DecreasingImpatienceReport check_decreasing_impatience(const DiscountFunction& d, double s,
                                                       double grid_max, int grid_n) {
  if (!(s > 0.0)) fail(ErrorCode::InvalidArgument, "decreasing impatience needs s > 0");
  const auto grid = uniform_grid(grid_max, grid_n);
  std::vector<double> ratio(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double base = d(grid[i]);
    if (base == 0.0) fail(ErrorCode::DivisionByZero, "delta vanishes at t=" + std::to_string(grid[i]));
    ratio[i] = d(grid[i] + s) / base;
  }
  DecreasingImpatienceReport report;
  report.discontinuous_at_zero = !d.continuous_at_zero();
  report.min_increment = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double inc = ratio[i + 1] - ratio[i];
    if (inc < report.min_increment) {
      report.min_increment = inc;
      report.witness_t = grid[i];
    }
  }
  report.holds = report.min_increment > kPropertyTol;
  return report;
}

}  // namespace eqstop
