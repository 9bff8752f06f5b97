#include "eqstop/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <mutex>
#include <thread>
#include <tuple>

#include "eqstop/error.hpp"
#include "eqstop/kernels.hpp"

namespace eqstop::mc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// exp(-50) ~ 2e-22: crossings this unlikely are not sampled.
constexpr double kNegligibleLogProb = -50.0;
constexpr std::size_t kLanes = 32;

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double bridge_scale(double sigma, double dt) { return -2.0 / (sigma * sigma * dt); }

struct StepDecision {
  bool stopped = false;
  double frac = 0.0;  // fraction of the step elapsed at the stop
  double state = 0.0;
};

// One step from x0 (inside the signed gap (lo, hi), or on its edge for a
// boundary start) to x1. exp_lo/exp_hi are the bridge log-probabilities.
template <class Draw>
StepDecision resolve_step(double x0, double x1, double lo, double hi, double exp_lo, double exp_hi,
                          bool bridge, Draw&& draw) {
  if (x1 <= lo) return {true, (lo - x0) / (x1 - x0), lo};
  if (x1 >= hi) return {true, (hi - x0) / (x1 - x0), hi};
  if (bridge) {
    const double top = std::max(exp_lo, exp_hi);
    if (top > kNegligibleLogProb) {
      const double p_lo = std::exp(exp_lo);
      const double p_hi = std::exp(exp_hi);
      const double p = p_lo + p_hi - p_lo * p_hi;
      const double u = draw();
      if (u < p) {
        const bool lower = u * (p_lo + p_hi) < p * p_lo;
        return {true, 0.5, lower ? lo : hi};
      }
    }
  }
  return {};
}

double exponent_below(double x0, double x1, double lo, double scale) {
  const double below = (x0 - lo) * (x1 - lo);
  return scale * below;
}

double exponent_above(double x0, double x1, double hi, double scale) {
  const double above = (hi - x0) * (hi - x1);
  return scale * above;
}

// First step of an L* path started on the boundary of the stop set. Sets
// the barriers of the gap the path moved into.
template <class Draw>
StepDecision boundary_step(const ThresholdPolicy& policy, double x0, double x1, double scale, bool bridge,
                           Draw&& draw, double& lo, double& hi) {
  if (policy.contains(std::abs(x1))) return {true, 1.0, x0};
  std::tie(lo, hi) = policy.signed_barriers(x1);
  return resolve_step(x0, x1, lo, hi, exponent_below(x0, x1, lo, scale), exponent_above(x0, x1, hi, scale),
                      bridge, draw);
}

enum class Start { StopNow, Boundary, InGap };

Start classify_start(const ThresholdPolicy& policy, double x0, bool strict) {
  const double y = std::abs(x0);
  if (!policy.contains(y)) return Start::InGap;
  if (!strict || policy.is_interior(y)) return Start::StopNow;
  return Start::Boundary;
}

std::vector<std::pair<std::int64_t, std::int64_t>> chunks(std::int64_t n, int threads) {
  int t = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  t = static_cast<int>(std::min<std::int64_t>(t, std::max<std::int64_t>(1, n / static_cast<std::int64_t>(kLanes))));
  t = std::max(t, 1);
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (int i = 0; i < t; ++i) out.emplace_back(n * i / t, n * (i + 1) / t);
  return out;
}

template <class Fn>
void parallel_chunks(std::int64_t n, int threads, Fn&& fn) {
  const auto parts = chunks(n, threads);
  if (parts.size() == 1) {
    fn(parts[0].first, parts[0].second);
    return;
  }
  std::vector<std::jthread> workers;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (const auto& [b, e] : parts) {
    workers.emplace_back([&, b = b, e = e] {
      try {
        fn(b, e);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  workers.clear();
  if (error) std::rethrow_exception(error);
}

// Fixed set of lanes advanced in lock-step; a lane that finishes picks up the
// next path of the range. Per-path streams make each path's result
// independent of which lane or thread simulated it.
class LaneSimulator {
 public:
  LaneSimulator(const DiffusionModel& model, const MonteCarloSpec& spec)
      : model_(model), spec_(spec), sqrt_dt_(std::sqrt(spec.dt)) {}

 protected:
  struct Lanes {
    std::vector<double> x, x1, z, lo, hi, scale, exp_lo, exp_hi;
    std::vector<std::int64_t> step, path;
    std::vector<std::uint8_t> boundary;
    std::vector<std::mt19937_64> normal_rng, uniform_rng;
    std::vector<std::normal_distribution<double>> normal;

    explicit Lanes(std::size_t n)
        : x(n), x1(n), z(n), lo(n), hi(n), scale(n), exp_lo(n), exp_hi(n), step(n), path(n), boundary(n),
          normal_rng(n), uniform_rng(n), normal(n) {}

    void swap_lanes(std::size_t a, std::size_t b) {
      std::swap(x[a], x[b]);
      std::swap(lo[a], lo[b]);
      std::swap(hi[a], hi[b]);
      std::swap(scale[a], scale[b]);
      std::swap(step[a], step[b]);
      std::swap(path[a], path[b]);
      std::swap(boundary[a], boundary[b]);
      std::swap(normal_rng[a], normal_rng[b]);
      std::swap(uniform_rng[a], uniform_rng[b]);
      std::swap(normal[a], normal[b]);
    }
  };

  void seed_lane(Lanes& lanes, std::size_t i, std::int64_t path, double x0) const {
    lanes.path[i] = path;
    lanes.x[i] = x0;
    lanes.step[i] = 0;
    lanes.boundary[i] = 0;
    lanes.normal_rng[i].seed(stream_seed(spec_.master_seed, static_cast<std::uint64_t>(path), 0));
    lanes.uniform_rng[i].seed(stream_seed(spec_.master_seed, static_cast<std::uint64_t>(path), 1));
    lanes.normal[i].reset();
  }

  // Advances lanes [0, n) by one Euler step into x1.
  void advance(Lanes& lanes, std::size_t n) const {
    for (std::size_t i = 0; i < n; ++i) lanes.z[i] = lanes.normal[i](lanes.normal_rng[i]);
    std::copy_n(lanes.x.begin(), n, lanes.x1.begin());
    if (model_.has_constant_coefficients()) {
      kernels::euler_step(std::span(lanes.x1.data(), n), std::span<const double>(lanes.z.data(), n),
                          model_.drift(0.0) * spec_.dt, model_.vol(0.0) * sqrt_dt_);
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        const double x = lanes.x[i];
        const double drift_dt = model_.drift(x) * spec_.dt;
        const double vol_sqrt_dt = model_.vol(x) * sqrt_dt_;
        const double diffusion = vol_sqrt_dt * lanes.z[i];
        lanes.x1[i] = (x + drift_dt) + diffusion;
        lanes.scale[i] = bridge_scale(model_.vol(x), spec_.dt);
      }
    }
  }

  const DiffusionModel& model_;
  const MonteCarloSpec& spec_;
  double sqrt_dt_;
};

class StoppingSimulator : LaneSimulator {
 public:
  StoppingSimulator(const DiffusionModel& model, const ThresholdPolicy& policy, bool strict,
                    const MonteCarloSpec& spec, StoppingSamples& out)
      : LaneSimulator(model, spec), policy_(policy), strict_(strict), out_(out) {}

  void run(double x0, std::int64_t begin, std::int64_t end) const {
    Lanes lanes(kLanes);
    const std::int64_t n_steps = spec_.n_steps();
    const double constant_scale = bridge_scale(model_.vol(0.0), spec_.dt);
    std::int64_t next = begin;
    std::size_t n = 0;

    auto record = [&](std::int64_t path, double time, double state, bool truncated) {
      out_.time[path] = time;
      out_.state[path] = state;
      out_.truncated[path] = truncated ? 1 : 0;
    };
    // Fills slot i with the next path that actually needs simulating.
    auto refill = [&](std::size_t i) {
      while (next < end) {
        const std::int64_t path = next++;
        const Start start = classify_start(policy_, x0, strict_);
        if (start == Start::StopNow) {
          record(path, 0.0, x0, false);
          continue;
        }
        seed_lane(lanes, i, path, x0);
        lanes.scale[i] = constant_scale;
        if (start == Start::Boundary) {
          lanes.boundary[i] = 1;
        } else {
          std::tie(lanes.lo[i], lanes.hi[i]) = policy_.signed_barriers(x0);
        }
        return true;
      }
      return false;
    };

    while (n < kLanes && refill(n)) ++n;
    while (n > 0) {
      advance(lanes, n);
      kernels::bridge_exponents(std::span<const double>(lanes.x.data(), n),
                                std::span<const double>(lanes.x1.data(), n),
                                std::span<const double>(lanes.lo.data(), n),
                                std::span<const double>(lanes.hi.data(), n),
                                std::span<const double>(lanes.scale.data(), n), std::span(lanes.exp_lo.data(), n),
                                std::span(lanes.exp_hi.data(), n));
      bool any_idle = false;
      for (std::size_t i = 0; i < n; ++i) {
        auto draw = [&] { return std::generate_canonical<double, 53>(lanes.uniform_rng[i]); };
        StepDecision d;
        if (lanes.boundary[i]) {
          d = boundary_step(policy_, lanes.x[i], lanes.x1[i], lanes.scale[i], spec_.bridge_correction, draw,
                            lanes.lo[i], lanes.hi[i]);
          lanes.boundary[i] = 0;
        } else {
          d = resolve_step(lanes.x[i], lanes.x1[i], lanes.lo[i], lanes.hi[i], lanes.exp_lo[i], lanes.exp_hi[i],
                           spec_.bridge_correction, draw);
        }
        bool done = false;
        if (d.stopped) {
          record(lanes.path[i], (static_cast<double>(lanes.step[i]) + d.frac) * spec_.dt, d.state, false);
          done = true;
        } else {
          lanes.x[i] = lanes.x1[i];
          if (++lanes.step[i] == n_steps) {
            record(lanes.path[i], static_cast<double>(n_steps) * spec_.dt, lanes.x[i], true);
            done = true;
          }
        }
        if (done && !refill(i)) {
          lanes.path[i] = -1;
          any_idle = true;
        }
      }
      if (!any_idle) continue;
      // Out of paths: pack the running lanes to the front.
      std::size_t keep = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (lanes.path[i] < 0) continue;
        if (keep != i) lanes.swap_lanes(keep, i);
        ++keep;
      }
      n = keep;
    }
  }

 private:
  const ThresholdPolicy& policy_;
  bool strict_;
  StoppingSamples& out_;
};

class PathSimulator : LaneSimulator {
 public:
  PathSimulator(const DiffusionModel& model, const MonteCarloSpec& spec, PathEnsemble& out)
      : LaneSimulator(model, spec), out_(out) {}

  void run(double x0, std::int64_t begin, std::int64_t end) const {
    Lanes lanes(kLanes);
    const std::int64_t stride = out_.n_steps + 1;
    for (std::int64_t first = begin; first < end; first += static_cast<std::int64_t>(kLanes)) {
      const std::size_t n = static_cast<std::size_t>(std::min<std::int64_t>(kLanes, end - first));
      for (std::size_t i = 0; i < n; ++i) {
        seed_lane(lanes, i, first + static_cast<std::int64_t>(i), x0);
        out_.values[(first + i) * stride] = x0;
      }
      for (std::int64_t k = 1; k <= out_.n_steps; ++k) {
        advance(lanes, n);
        for (std::size_t i = 0; i < n; ++i) {
          lanes.x[i] = lanes.x1[i];
          out_.values[(first + i) * stride + k] = lanes.x[i];
        }
      }
    }
  }

 private:
  PathEnsemble& out_;
};

std::vector<double> deterministic_path(const DiffusionModel& model, double x0, double dt, std::int64_t n_steps) {
  std::vector<double> path(static_cast<std::size_t>(n_steps + 1));
  for (std::int64_t k = 0; k <= n_steps; ++k) path[k] = x0 * std::exp(model.rate() * (static_cast<double>(k) * dt));
  return path;
}

}  // namespace

void MonteCarloSpec::validate() const {
  if (n_paths < 100) fail(ErrorCode::InvalidArgument, "n_paths must be >= 100");
  if (!(dt > 0.0) || !(horizon > 0.0) || dt > horizon) {
    fail(ErrorCode::InvalidArgument, "Monte Carlo needs 0 < dt <= horizon");
  }
  if (threads < 0) fail(ErrorCode::InvalidArgument, "threads must be >= 0");
}

std::int64_t MonteCarloSpec::n_steps() const {
  return static_cast<std::int64_t>(std::ceil(horizon / dt - 1e-9));
}

MonteCarloSpec MonteCarloSpec::for_beta(double beta) {
  if (!(beta > 0.0)) fail(ErrorCode::InvalidBeta, "beta must be > 0");
  MonteCarloSpec spec;
  spec.dt = 1e-3 / beta;
  spec.horizon = 200.0 / beta;
  return spec;
}

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t path_index, std::uint64_t stream) {
  return mix64(mix64(master_seed) ^ mix64(path_index * 4 + stream + 0x632be59bd9b4e019ULL));
}

double bridge_crossing_probability(double x_lo, double x_hi, double barrier, double dt, double sigma) {
  if (!(dt > 0.0)) fail(ErrorCode::InvalidArgument, "dt must be > 0");
  if (x_lo >= barrier || x_hi >= barrier) return 1.0;
  if (sigma == 0.0) return 0.0;
  return std::exp(exponent_above(x_lo, x_hi, barrier, bridge_scale(sigma, dt)));
}

bool bridge_crossing_adjust(double x_lo, double x_hi, double barrier, double dt, double uniform_draw,
                            double sigma) {
  return uniform_draw < bridge_crossing_probability(x_lo, x_hi, barrier, dt, sigma);
}

PathEnsemble simulate_paths(const DiffusionModel& model, double x0, const MonteCarloSpec& spec) {
  spec.validate();
  PathEnsemble out;
  out.n_paths = spec.n_paths;
  out.n_steps = spec.n_steps();
  out.dt = spec.dt;
  out.values.resize(static_cast<std::size_t>(out.n_paths * (out.n_steps + 1)));
  if (model.kind() == DiffusionModel::Kind::DeterministicExponential) {
    const auto path = deterministic_path(model, x0, spec.dt, out.n_steps);
    for (std::int64_t p = 0; p < out.n_paths; ++p) {
      std::copy(path.begin(), path.end(), out.values.begin() + p * (out.n_steps + 1));
    }
    return out;
  }
  parallel_chunks(spec.n_paths, spec.threads,
                  [&](std::int64_t b, std::int64_t e) { PathSimulator(model, spec, out).run(x0, b, e); });
  return out;
}

void write_ensemble(const PathEnsemble& ensemble, const std::string& file) {
  std::ofstream os(file, std::ios::binary);
  if (!os) fail(ErrorCode::InvalidArgument, "cannot open " + file + " for writing");
  const std::uint64_t header[2] = {static_cast<std::uint64_t>(ensemble.n_paths),
                                   static_cast<std::uint64_t>(ensemble.n_steps)};
  os.write(reinterpret_cast<const char*>(header), sizeof(header));
  os.write(reinterpret_cast<const char*>(&ensemble.dt), sizeof(double));
  os.write(reinterpret_cast<const char*>(ensemble.values.data()),
           static_cast<std::streamsize>(ensemble.values.size() * sizeof(double)));
  if (!os) fail(ErrorCode::InvalidArgument, "failed writing " + file);
}

PathEnsemble read_ensemble(const std::string& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) fail(ErrorCode::InvalidArgument, "cannot open " + file);
  std::uint64_t header[2];
  PathEnsemble out;
  is.read(reinterpret_cast<char*>(header), sizeof(header));
  is.read(reinterpret_cast<char*>(&out.dt), sizeof(double));
  if (!is) fail(ErrorCode::InvalidArgument, "truncated ensemble header in " + file);
  out.n_paths = static_cast<std::int64_t>(header[0]);
  out.n_steps = static_cast<std::int64_t>(header[1]);
  out.values.resize(static_cast<std::size_t>(out.n_paths * (out.n_steps + 1)));
  is.read(reinterpret_cast<char*>(out.values.data()), static_cast<std::streamsize>(out.values.size() * sizeof(double)));
  if (!is) fail(ErrorCode::InvalidArgument, "truncated ensemble data in " + file);
  return out;
}

EntryResult first_entry(const ThresholdPolicy& policy, std::span<const double> path, double dt, double t,
                        bool strict, const BridgeOptions* bridge) {
  if (path.empty()) fail(ErrorCode::EmptyPath, "first_entry on an empty path");
  if (!(dt > 0.0)) fail(ErrorCode::InvalidArgument, "dt must be > 0");
  const double x0 = path[0];
  const Start start = classify_start(policy, x0, strict);
  if (start == Start::StopNow) return {t, x0, true};

  const bool use_bridge = bridge != nullptr;
  std::mt19937_64 urng;
  if (use_bridge) urng.seed(stream_seed(bridge->master_seed, bridge->path_index, 1));
  auto draw = [&] { return std::generate_canonical<double, 53>(urng); };
  const double scale = bridge_scale(use_bridge ? bridge->sigma : 1.0, dt);

  bool boundary = start == Start::Boundary;
  double lo = -kInf, hi = kInf;
  if (!boundary) std::tie(lo, hi) = policy.signed_barriers(x0);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const double a = path[k], b = path[k + 1];
    StepDecision d;
    if (boundary) {
      d = boundary_step(policy, a, b, scale, use_bridge, draw, lo, hi);
      boundary = false;
    } else {
      d = resolve_step(a, b, lo, hi, exponent_below(a, b, lo, scale), exponent_above(a, b, hi, scale), use_bridge,
                       draw);
    }
    if (d.stopped) return {t + (static_cast<double>(k) + d.frac) * dt, d.state, true};
  }
  return {t + static_cast<double>(path.size() - 1) * dt, path.back(), false};
}

StoppingSamples sample_stopping(const DiffusionModel& model, const ThresholdPolicy& policy, double x0,
                                bool strict, const MonteCarloSpec& spec) {
  spec.validate();
  StoppingSamples out;
  if (model.kind() == DiffusionModel::Kind::DeterministicExponential) {
    const auto path = deterministic_path(model, x0, spec.dt, spec.n_steps());
    const EntryResult r = first_entry(policy, path, spec.dt, 0.0, strict);
    out.time = {r.time};
    out.state = {r.state};
    out.truncated = {static_cast<std::uint8_t>(r.hit ? 0 : 1)};
    return out;
  }
  const auto n = static_cast<std::size_t>(spec.n_paths);
  out.time.resize(n);
  out.state.resize(n);
  out.truncated.resize(n);
  parallel_chunks(spec.n_paths, spec.threads, [&](std::int64_t b, std::int64_t e) {
    StoppingSimulator(model, policy, strict, spec, out).run(x0, b, e);
  });
  return out;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 16) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

JEstimate estimate_J(const DiffusionModel& model, const DiscountFunction& d, const Payoff& g,
                     const ThresholdPolicy& policy, double x0, bool strict, const MonteCarloSpec& spec) {
  const StoppingSamples samples = sample_stopping(model, policy, x0, strict, spec);
  const std::size_t n = samples.time.size();
  std::vector<double> values(n);
  std::int64_t truncated = 0;
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = d(samples.time[i]) * g(samples.state[i]);
    truncated += samples.truncated[i];
  }
  JEstimate est;
  est.n_effective = static_cast<std::int64_t>(n);
  est.mean = pairwise_sum(values) / static_cast<double>(n);
  est.truncated_fraction = static_cast<double>(truncated) / static_cast<double>(n);
  if (n > 1) {
    for (double& v : values) v = (v - est.mean) * (v - est.mean);
    const double var = pairwise_sum(values) / static_cast<double>(n - 1);
    est.std_error = std::sqrt(var / static_cast<double>(n));
  }
  return est;
}

}  // namespace eqstop::mc
