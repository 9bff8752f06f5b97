#pragma once

// Data-parallel inner loops used by the quadrature and path simulation.
//
// Every kernel has a scalar reference in kernels::scalar and, where the
// build supports it, vectorised variants with identical floating-point
// evaluation order. Variants must agree with the reference bit-for-bit;
// the dispatching entry points pick one at runtime.

#include <span>
#include <string_view>
#include <vector>

namespace eqstop::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

bool isa_available(Isa isa);
std::vector<Isa> available_isas();

// Best ISA supported by both the build and the running CPU. Setting the
// environment variable EQSTOP_ISA=scalar pins the scalar reference.
Isa best_isa();
Isa active_isa();
// Throws Error(Unsupported) if the ISA is not available.
void set_active_isa(Isa isa);

// x[i] <- (x[i] + drift_dt) + vol_sqrt_dt * z[i]
void euler_step(std::span<double> x, std::span<const double> z, double drift_dt,
                double vol_sqrt_dt);

// Log crossing probabilities of a Brownian bridge against a lower and an
// upper barrier:
//   out_lo[i] <- scale[i] * ((x0[i] - lo[i]) * (x1[i] - lo[i]))
//   out_hi[i] <- scale[i] * ((hi[i] - x0[i]) * (hi[i] - x1[i]))
// with scale = -2 / (sigma^2 dt). Infinite barriers give -inf.
void bridge_exponents(std::span<const double> x0, std::span<const double> x1,
                      std::span<const double> lo, std::span<const double> hi,
                      std::span<const double> scale, std::span<double> out_lo,
                      std::span<double> out_hi);

// sum_i w[i] * v[i], accumulated in four interleaved partial sums
// (element i goes to partial i % 4) combined as (p0 + p1) + (p2 + p3).
double striped_dot(std::span<const double> w, std::span<const double> v);

namespace scalar {
void euler_step(std::span<double> x, std::span<const double> z, double drift_dt,
                double vol_sqrt_dt);
void bridge_exponents(std::span<const double> x0, std::span<const double> x1,
                      std::span<const double> lo, std::span<const double> hi,
                      std::span<const double> scale, std::span<double> out_lo,
                      std::span<double> out_hi);
double striped_dot(std::span<const double> w, std::span<const double> v);
}  // namespace scalar

#if defined(EQSTOP_WITH_AVX2)
namespace avx2 {
void euler_step(std::span<double> x, std::span<const double> z, double drift_dt,
                double vol_sqrt_dt);
void bridge_exponents(std::span<const double> x0, std::span<const double> x1,
                      std::span<const double> lo, std::span<const double> hi,
                      std::span<const double> scale, std::span<double> out_lo,
                      std::span<double> out_hi);
double striped_dot(std::span<const double> w, std::span<const double> v);
}  // namespace avx2
#endif

}  // namespace eqstop::kernels
