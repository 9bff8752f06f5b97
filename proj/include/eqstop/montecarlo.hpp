#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "eqstop/discounting.hpp"
#include "eqstop/model.hpp"
#include "eqstop/stop_set.hpp"

namespace eqstop::mc {

using Payoff = std::function<double(double)>;

struct MonteCarloSpec {
  std::int64_t n_paths = 100000;
  double dt = 1e-3;
  double horizon = 200.0;
  std::uint64_t master_seed = 20170812;
  bool bridge_correction = true;
  // Worker threads; 0 uses the hardware concurrency. Results do not depend
  // on this value.
  int threads = 0;

  void validate() const;
  std::int64_t n_steps() const;

  // dt = 1e-3 / beta, horizon = 200 / beta.
  static MonteCarloSpec for_beta(double beta);
};

struct JEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_effective = 0;
  double truncated_fraction = 0.0;

  // More than 0.1% of paths reached the horizon without stopping.
  bool horizon_truncation() const { return truncated_fraction > 1e-3; }
};

// Seed of the random stream `stream` of path `path_index`. Stream 0 drives
// the Gaussian increments, stream 1 the bridge-crossing uniforms.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t path_index, std::uint64_t stream);

// Discretised paths on [0, horizon], row-major: row p holds the n_steps + 1
// values of path p.
struct PathEnsemble {
  std::int64_t n_paths = 0;
  std::int64_t n_steps = 0;
  double dt = 0.0;
  std::vector<double> values;

  std::span<const double> path(std::int64_t p) const {
    return {values.data() + p * (n_steps + 1), static_cast<std::size_t>(n_steps + 1)};
  }
};

// Euler-Maruyama. Deterministic given spec.master_seed and independent of
// the thread count.
PathEnsemble simulate_paths(const DiffusionModel& model, double x0, const MonteCarloSpec& spec);

// Binary dump: uint64 n_paths, uint64 n_steps, float64 dt, then
// n_paths * (n_steps + 1) float64 values row-major, native byte order.
void write_ensemble(const PathEnsemble& ensemble, const std::string& file);
PathEnsemble read_ensemble(const std::string& file);

// Probability that a Brownian bridge from x_lo to x_hi over dt with volatility
// sigma touches `barrier` lying above both endpoints; 1 if an endpoint is at
// or beyond it.
double bridge_crossing_probability(double x_lo, double x_hi, double barrier, double dt, double sigma = 1.0);
bool bridge_crossing_adjust(double x_lo, double x_hi, double barrier, double dt, double uniform_draw,
                            double sigma = 1.0);

struct BridgeOptions {
  double sigma = 1.0;
  std::uint64_t master_seed = 0;
  std::uint64_t path_index = 0;
};

struct EntryResult {
  double time = 0.0;   // absolute entry time, or the path end when !hit
  double state = 0.0;  // state at entry (barrier value when a crossing is detected)
  bool hit = false;
};

// First entry of |x| into the policy's stop set along a sampled path
// starting at time t. strict = false realises L (s >= t), strict = true
// realises L* (s > t): interior states stop at t, boundary states are
// re-entered at the first grid time. Crossings between grid points are
// resolved at the crossed barrier, by linear interpolation when a grid value
// lands in the set and, with bridge options, by Brownian-bridge sampling
// (at the step midpoint). Throws Error(EmptyPath).
EntryResult first_entry(const ThresholdPolicy& policy, std::span<const double> path, double dt, double t,
                        bool strict, const BridgeOptions* bridge = nullptr);

struct StoppingSamples {
  std::vector<double> time;
  std::vector<double> state;
  std::vector<std::uint8_t> truncated;
};

// Stopping times and states of n_paths paths from x0 under the policy
// (strict selects L*). Paths reaching the horizon are marked truncated and
// report the horizon and their terminal state. Deterministic models yield a
// single sample.
StoppingSamples sample_stopping(const DiffusionModel& model, const ThresholdPolicy& policy, double x0,
                                bool strict, const MonteCarloSpec& spec);

// J(0, x0; tau) = E[delta(tau) g(X_tau)] with tau = L or L* of the policy.
JEstimate estimate_J(const DiffusionModel& model, const DiscountFunction& d, const Payoff& g,
                     const ThresholdPolicy& policy, double x0, bool strict, const MonteCarloSpec& spec);

// Pairwise summation in index order.
double pairwise_sum(std::span<const double> values);

}  // namespace eqstop::mc
