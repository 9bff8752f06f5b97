#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace eqstop {

enum class DiscountFamily { Exponential, Hyperbolic, QuasiHyperbolic, Custom };

std::string_view to_string(DiscountFamily family);
DiscountFamily discount_family_from_string(std::string_view name);

// A discount function delta: [0, inf) -> [0, 1] with delta(0) = 1.
//
//   exponential       delta(s) = exp(-rho s)
//   hyperbolic        delta(s) = 1 / (1 + beta s)
//   quasi_hyperbolic  delta(0) = 1, delta(s) = delta0 exp(-rho s) for s > 0
//   custom            user-supplied map
//
// quasi_hyperbolic is discontinuous at 0; it is admitted and reported as such.
class DiscountFunction {
 public:
  static DiscountFunction exponential(double rho);
  static DiscountFunction hyperbolic(double beta);
  static DiscountFunction quasi_hyperbolic(double delta0, double rho);
  static DiscountFunction custom(std::function<double(double)> fn, std::string name = "custom");

  DiscountFamily family() const { return family_; }
  double rho() const { return rho_; }
  double beta() const { return beta_; }
  double delta0() const { return delta0_; }
  const std::string& name() const { return name_; }
  bool continuous_at_zero() const { return family_ != DiscountFamily::QuasiHyperbolic || delta0_ == 1.0; }

  // Throws Error(NegativeTime) for s < 0.
  double evaluate(double s) const;
  double operator()(double s) const { return evaluate(s); }

 private:
  DiscountFunction() = default;

  DiscountFamily family_ = DiscountFamily::Exponential;
  double rho_ = 0.0;
  double beta_ = 0.0;
  double delta0_ = 1.0;
  std::string name_;
  std::function<double(double)> custom_;
};

struct LogSubadditivityReport {
  bool holds = true;
  double worst_violation = 0.0;  // max over the grid of delta(s)delta(t) - delta(s+t)
  double witness_s = 0.0;
  double witness_t = 0.0;
  bool discontinuous_at_zero = false;
};

// Scans delta(s)delta(t) <= delta(s+t) on the uniform grid {0, ..., grid_max}^2
// with grid_n points per axis; holds iff the worst violation is <= 1e-12.
LogSubadditivityReport check_log_subadditive(const DiscountFunction& d, double grid_max = 100.0,
                                             int grid_n = 500);

struct DecreasingImpatienceReport {
  bool holds = true;
  double min_increment = 0.0;  // smallest successive difference of the ratio
  double witness_t = 0.0;      // left end of that difference
  bool discontinuous_at_zero = false;
};

// Tests whether t -> delta(t + s) / delta(t) is strictly increasing on the
// grid {0, ..., grid_max} (successive differences > 1e-12). Throws
// Error(DivisionByZero) if delta vanishes on the grid.
DecreasingImpatienceReport check_decreasing_impatience(const DiscountFunction& d, double s,
                                                       double grid_max = 100.0, int grid_n = 500);

}  // namespace eqstop
