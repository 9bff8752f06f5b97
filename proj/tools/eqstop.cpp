// eqstop: equilibrium stopping policies under non-exponential discounting.
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "eqstop/error.hpp"
#include "run_config.hpp"

namespace {

struct Flags {
  std::string config;
  double beta = 1.0;
  std::string discount;
  double start_threshold = 0.0;
  std::string evaluator;
  std::string problem;
  int grid_n = 0;
  int max_steps = 0;
  double state = 0.0;
  std::int64_t n_paths = 0;
  double dt = 0.0;
  double horizon = 0.0;
  std::uint64_t seed = 0;
  bool no_bridge = false;
  int threads = 0;
  double t = 0.0;
  double s_max = 0.0;
  int n_samples = 0;
  double smoking_horizon = 0.0;
  int smoking_grid_n = 0;
  std::string out;
  std::string boundary_csv;
  std::string format;
};

void add_common(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config, "JSON config; flags override its fields");
  cmd.add_option("--beta", f.beta, "hyperbolic discount rate beta > 0");
  cmd.add_option("--discount", f.discount, "hyperbolic[:beta] | exponential:rho | quasi_hyperbolic:delta0,rho");
  cmd.add_option("--out", f.out, "output file (default stdout)");
  cmd.add_option("--format", f.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
}

void add_policy(CLI::App& cmd, Flags& f) {
  cmd.add_option("--start-threshold", f.start_threshold, "initial threshold (default 1/sqrt(beta))");
  cmd.add_option("--evaluator", f.evaluator, "analytic | mc")->check(CLI::IsMember({"analytic", "mc"}));
  cmd.add_option("--grid-n", f.grid_n, "state grid points on [0, 4/sqrt(beta)]");
  cmd.add_option("--max-steps", f.max_steps, "Theta applications before giving up");
}

void add_mc(CLI::App& cmd, Flags& f) {
  cmd.add_option("--n-paths", f.n_paths, "Monte Carlo paths");
  cmd.add_option("--dt", f.dt, "Euler step");
  cmd.add_option("--horizon", f.horizon, "simulation horizon");
  cmd.add_option("--seed", f.seed, "master seed (EQSTOP_SEED overrides)");
  cmd.add_flag("--no-bridge", f.no_bridge, "disable the Brownian-bridge crossing correction");
  cmd.add_option("--threads", f.threads, "worker threads, 0 = all cores");
}

void add_smoking(CLI::App& cmd, Flags& f) {
  cmd.add_option("--T", f.smoking_horizon, "smoking horizon T");
  cmd.add_option("--time-grid-n", f.smoking_grid_n, "time grid points on [0, T]");
}

bool given(const CLI::App& cmd, const char* name) {
  try {
    return cmd.count(name) > 0;
  } catch (const CLI::OptionNotFound&) {
    return false;
  }
}

eqstop::cli::RunConfig build_config(const CLI::App& cmd, const Flags& f) {
  using eqstop::cli::RunConfig;
  RunConfig cfg = f.config.empty() ? RunConfig{} : eqstop::cli::config_from_file(f.config);
  cfg.command = cmd.get_name();
  if (given(cmd, "--beta")) cfg.beta = f.beta;
  if (given(cmd, "--discount")) cfg.discount = eqstop::cli::parse_discount(f.discount, cfg.beta);
  if (given(cmd, "--problem")) cfg.problem = f.problem;
  if (given(cmd, "--start-threshold")) cfg.start_threshold = f.start_threshold;
  if (given(cmd, "--evaluator")) cfg.evaluator = f.evaluator;
  if (given(cmd, "--grid-n")) cfg.grid_n = f.grid_n;
  if (given(cmd, "--max-steps")) cfg.max_steps = f.max_steps;
  if (given(cmd, "--x")) cfg.state = f.state;
  if (given(cmd, "--n-paths")) cfg.mc.n_paths = f.n_paths;
  if (given(cmd, "--dt")) cfg.mc.dt = f.dt;
  if (given(cmd, "--horizon")) cfg.mc.horizon = f.horizon;
  if (given(cmd, "--seed")) cfg.mc.master_seed = f.seed;
  if (given(cmd, "--no-bridge")) cfg.mc.bridge_correction = false;
  if (given(cmd, "--threads")) cfg.mc.threads = f.threads;
  if (given(cmd, "--t")) cfg.t = f.t;
  if (given(cmd, "--s-max")) cfg.s_max = f.s_max;
  if (given(cmd, "--n-samples")) cfg.n_samples = f.n_samples;
  if (given(cmd, "--T")) cfg.smoking_horizon = f.smoking_horizon;
  if (given(cmd, "--time-grid-n")) cfg.smoking_grid_n = f.smoking_grid_n;
  if (given(cmd, "--out")) cfg.out = f.out;
  if (given(cmd, "--boundary-csv")) cfg.boundary_csv = f.boundary_csv;
  if (given(cmd, "--format")) cfg.format = eqstop::cli::format_from_string(f.format);
  if (const char* env = std::getenv("EQSTOP_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') eqstop::fail(eqstop::ErrorCode::InvalidArgument, "EQSTOP_SEED must be an integer");
    cfg.mc.master_seed = v;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium stopping policies under non-exponential discounting"};
  app.require_subcommand(1);
  Flags f;

  auto* constants = app.add_subcommand("constants", "a*, 1/sqrt(beta), x*(1/sqrt(beta)), s*, k(1/sqrt(beta))");
  add_common(*constants, f);

  auto* iterate = app.add_subcommand("iterate", "iterate Theta from a threshold policy until it is fixed");
  add_common(*iterate, f);
  add_policy(*iterate, f);
  add_mc(*iterate, f);
  add_smoking(*iterate, f);
  iterate->add_option("--problem", f.problem, "bessel | smoking")->check(CLI::IsMember({"bessel", "smoking"}));
  iterate->add_option("--boundary-csv", f.boundary_csv, "also write the per-step boundaries as CSV");

  auto* boundary = app.add_subcommand("boundary", "naive free boundary sqrt(1/beta + (s - t))");
  add_common(*boundary, f);
  boundary->add_option("--t", f.t, "initial time");
  boundary->add_option("--s-max", f.s_max, "last sample time");
  boundary->add_option("--n-samples", f.n_samples, "number of samples");

  auto* classify = app.add_subcommand("classify", "stop / continue / indifferent labels under a threshold policy");
  add_common(*classify, f);
  add_policy(*classify, f);
  add_mc(*classify, f);
  classify->add_option("--x", f.state, "classify this state only (default: the state grid)");

  auto* validate = app.add_subcommand("validate", "cross-checks of quadrature, simulation and grid Theta");
  add_common(*validate, f);
  add_policy(*validate, f);
  add_mc(*validate, f);
  add_smoking(*validate, f);

  auto* smoking = app.add_subcommand("smoking", "naive and Theta quitting times of the smoking example");
  add_common(*smoking, f);
  add_smoking(*smoking, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : eqstop::cli::kConfigError;
  }

  CLI::App* cmd = app.get_subcommands().front();
  eqstop::cli::RunConfig cfg;
  try {
    cfg = build_config(*cmd, f);
  } catch (const eqstop::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return eqstop::cli::kConfigError;
  }
  return eqstop::cli::run(cfg, std::cout, std::cerr);
}
