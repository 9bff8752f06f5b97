#include <array>
#include <cstddef>

#include "eqstop/kernels.hpp"

namespace eqstop::kernels::scalar {

void euler_step(std::span<double> x, std::span<const double> z, double drift_dt,
                double vol_sqrt_dt) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double diffusion = vol_sqrt_dt * z[i];
    x[i] = (x[i] + drift_dt) + diffusion;
  }
}

void bridge_exponents(std::span<const double> x0, std::span<const double> x1,
                      std::span<const double> lo, std::span<const double> hi,
                      std::span<const double> scale, std::span<double> out_lo,
                      std::span<double> out_hi) {
  const std::size_t n = x0.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double below = (x0[i] - lo[i]) * (x1[i] - lo[i]);
    const double above = (hi[i] - x0[i]) * (hi[i] - x1[i]);
    out_lo[i] = scale[i] * below;
    out_hi[i] = scale[i] * above;
  }
}

double striped_dot(std::span<const double> w, std::span<const double> v) {
  std::array<double, 4> acc{0.0, 0.0, 0.0, 0.0};
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double term = w[i] * v[i];
    acc[i % 4] = acc[i % 4] + term;
  }
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

}  // namespace eqstop::kernels::scalar
