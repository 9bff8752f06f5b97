#include <atomic>
#include <cstdlib>
#include <string>

#include "eqstop/error.hpp"
#include "eqstop/kernels.hpp"

namespace eqstop::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(EQSTOP_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* env = std::getenv("EQSTOP_ISA"); env != nullptr && std::string(env) == "scalar") {
    return Isa::Scalar;
  }
  return best_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2: return cpu_has_avx2();
  }
  return false;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::Scalar};
  if (isa_available(Isa::Avx2)) out.push_back(Isa::Avx2);
  return out;
}

Isa best_isa() { return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) fail(ErrorCode::Unsupported, "ISA " + std::string(to_string(isa)) + " not available");
  active().store(isa, std::memory_order_relaxed);
}

void euler_step(std::span<double> x, std::span<const double> z, double drift_dt,
                double vol_sqrt_dt) {
#if defined(EQSTOP_WITH_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::euler_step(x, z, drift_dt, vol_sqrt_dt);
#endif
  scalar::euler_step(x, z, drift_dt, vol_sqrt_dt);
}

void bridge_exponents(std::span<const double> x0, std::span<const double> x1,
                      std::span<const double> lo, std::span<const double> hi,
                      std::span<const double> scale, std::span<double> out_lo,
                      std::span<double> out_hi) {
#if defined(EQSTOP_WITH_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::bridge_exponents(x0, x1, lo, hi, scale, out_lo, out_hi);
#endif
  scalar::bridge_exponents(x0, x1, lo, hi, scale, out_lo, out_hi);
}

double striped_dot(std::span<const double> w, std::span<const double> v) {
#if defined(EQSTOP_WITH_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::striped_dot(w, v);
#endif
  return scalar::striped_dot(w, v);
}

}  // namespace eqstop::kernels
