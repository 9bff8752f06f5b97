#include <immintrin.h>

#include <array>
#include <cstddef>

#include "eqstop/kernels.hpp"

// Compiled with -mavx2 only; reached through the runtime dispatcher after a
// CPU check. Separate mul/add intrinsics keep the rounding sequence of the
// scalar reference.

namespace eqstop::kernels::avx2 {

void euler_step(std::span<double> x, std::span<const double> z, double drift_dt,
                double vol_sqrt_dt) {
  const std::size_t n = x.size();
  const __m256d mu = _mm256_set1_pd(drift_dt);
  const __m256d s = _mm256_set1_pd(vol_sqrt_dt);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x.data() + i);
    const __m256d zv = _mm256_loadu_pd(z.data() + i);
    const __m256d diffusion = _mm256_mul_pd(s, zv);
    _mm256_storeu_pd(x.data() + i, _mm256_add_pd(_mm256_add_pd(xv, mu), diffusion));
  }
  for (; i < n; ++i) {
    const double diffusion = vol_sqrt_dt * z[i];
    x[i] = (x[i] + drift_dt) + diffusion;
  }
}

void bridge_exponents(std::span<const double> x0, std::span<const double> x1,
                      std::span<const double> lo, std::span<const double> hi,
                      std::span<const double> scale, std::span<double> out_lo,
                      std::span<double> out_hi) {
  const std::size_t n = x0.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(x0.data() + i);
    const __m256d b = _mm256_loadu_pd(x1.data() + i);
    const __m256d l = _mm256_loadu_pd(lo.data() + i);
    const __m256d h = _mm256_loadu_pd(hi.data() + i);
    const __m256d c = _mm256_loadu_pd(scale.data() + i);
    const __m256d below = _mm256_mul_pd(_mm256_sub_pd(a, l), _mm256_sub_pd(b, l));
    const __m256d above = _mm256_mul_pd(_mm256_sub_pd(h, a), _mm256_sub_pd(h, b));
    _mm256_storeu_pd(out_lo.data() + i, _mm256_mul_pd(c, below));
    _mm256_storeu_pd(out_hi.data() + i, _mm256_mul_pd(c, above));
  }
  for (; i < n; ++i) {
    const double below = (x0[i] - lo[i]) * (x1[i] - lo[i]);
    const double above = (hi[i] - x0[i]) * (hi[i] - x1[i]);
    out_lo[i] = scale[i] * below;
    out_hi[i] = scale[i] * above;
  }
}

double striped_dot(std::span<const double> w, std::span<const double> v) {
  const std::size_t n = w.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d term = _mm256_mul_pd(_mm256_loadu_pd(w.data() + i), _mm256_loadu_pd(v.data() + i));
    acc = _mm256_add_pd(acc, term);
  }
  alignas(32) std::array<double, 4> lanes;
  _mm256_store_pd(lanes.data(), acc);
  for (; i < n; ++i) {
    const double term = w[i] * v[i];
    lanes[i % 4] = lanes[i % 4] + term;
  }
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace eqstop::kernels::avx2
