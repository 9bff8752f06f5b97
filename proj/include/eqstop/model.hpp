#pragma once

#include <cstdint>
#include <functional>

namespace eqstop {

// One-dimensional time-homogeneous model dX = b(X) dt + sigma(X) dW, or the
// deterministic growth path X_s = x exp(rate (s - t)) on a finite horizon.
class DiffusionModel {
 public:
  enum class Kind { Sde, DeterministicExponential };

  static DiffusionModel brownian(double sigma = 1.0) { return constant(0.0, sigma); }
  static DiffusionModel constant(double drift, double vol);
  static DiffusionModel sde(std::function<double(double)> drift, std::function<double(double)> vol);
  static DiffusionModel deterministic_exponential(double rate, double horizon);

  Kind kind() const { return kind_; }
  bool has_constant_coefficients() const { return constant_; }
  double drift(double x) const { return constant_ ? drift_const_ : drift_(x); }
  double vol(double x) const { return constant_ ? vol_const_ : vol_(x); }
  double rate() const { return rate_; }
  double horizon() const { return horizon_; }

  // Randomised Lipschitz spot check of b and sigma on [lo, hi].
  bool check_lipschitz(double constant_k, double lo, double hi, int n_pairs = 1000,
                       std::uint64_t seed = 7) const;

 private:
  DiffusionModel() = default;

  Kind kind_ = Kind::Sde;
  bool constant_ = true;
  double drift_const_ = 0.0;
  double vol_const_ = 1.0;
  std::function<double(double)> drift_;
  std::function<double(double)> vol_;
  double rate_ = 0.0;
  double horizon_ = 0.0;
};

}  // namespace eqstop
