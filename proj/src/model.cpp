#include "eqstop/model.hpp"

#include <cmath>
#include <random>
#include <utility>

#include "eqstop/error.hpp"

namespace eqstop {

DiffusionModel DiffusionModel::constant(double drift, double vol) {
  if (!std::isfinite(drift) || !(vol >= 0.0) || !std::isfinite(vol)) {
    fail(ErrorCode::InvalidArgument, "constant model needs finite drift and vol >= 0");
  }
  DiffusionModel m;
  m.drift_const_ = drift;
  m.vol_const_ = vol;
  return m;
}

DiffusionModel DiffusionModel::sde(std::function<double(double)> drift, std::function<double(double)> vol) {
  if (!drift || !vol) fail(ErrorCode::InvalidArgument, "sde model needs drift and vol callables");
  DiffusionModel m;
  m.constant_ = false;
  m.drift_ = std::move(drift);
  m.vol_ = std::move(vol);
  return m;
}

DiffusionModel DiffusionModel::deterministic_exponential(double rate, double horizon) {
  if (!std::isfinite(rate) || !(horizon > 0.0)) {
    fail(ErrorCode::InvalidArgument, "deterministic model needs finite rate and horizon > 0");
  }
  DiffusionModel m;
  m.kind_ = Kind::DeterministicExponential;
  m.drift_const_ = 0.0;
  m.vol_const_ = 0.0;
  m.rate_ = rate;
  m.horizon_ = horizon;
  return m;
}

bool DiffusionModel::check_lipschitz(double constant_k, double lo, double hi, int n_pairs,
                                     std::uint64_t seed) const {
  if (kind_ == Kind::DeterministicExponential || constant_) return true;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  for (int i = 0; i < n_pairs; ++i) {
    const double x = u(rng), y = u(rng);
    const double dx = std::abs(x - y);
    if (std::abs(drift(x) - drift(y)) > constant_k * dx + 1e-12) return false;
    if (std::abs(vol(x) - vol(y)) > constant_k * dx + 1e-12) return false;
  }
  return true;
}

}  // namespace eqstop
