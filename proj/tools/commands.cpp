#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <memory>

#include "eqstop/bessel_equilibrium.hpp"
#include "eqstop/continuation.hpp"
#include "eqstop/csv.hpp"
#include "eqstop/error.hpp"
#include "eqstop/hitting.hpp"
#include "eqstop/policy_engine.hpp"
#include "eqstop/smoking.hpp"

namespace eqstop::cli {

using eqstop::to_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double abs_payoff(double x) { return std::abs(x); }

bessel::BesselProblem problem_of(const RunConfig& cfg) { return {cfg.beta, cfg.quad, cfg.roots}; }

std::unique_ptr<ContinuationEvaluator> evaluator_of(const RunConfig& cfg) {
  if (cfg.evaluator == "mc") {
    return std::make_unique<MonteCarloEvaluator>(DiffusionModel::brownian(), cfg.effective_discount(), abs_payoff,
                                                 cfg.mc);
  }
  return std::make_unique<BrownianAnalyticEvaluator>(1.0, cfg.effective_discount(), abs_payoff, cfg.quad);
}

std::vector<double> state_grid(const RunConfig& cfg) {
  return uniform_grid(0.0, 4.0 / std::sqrt(cfg.beta), cfg.grid_n);
}

double start_threshold(const RunConfig& cfg) {
  return cfg.start_threshold ? *cfg.start_threshold : 1.0 / std::sqrt(cfg.beta);
}

void write_json(std::ostream& os, const Json& j) { os << j.dump(2) << '\n'; }

void policy_rows(csv::Writer& w, long long step, const ThresholdPolicy& p) {
  if (p.empty()) {
    w.row({step, std::string("none"), std::string("none")});
    return;
  }
  for (const Interval& iv : p.intervals()) w.row({step, iv.lo, iv.hi});
}

// The distinct policies of a trace: the confirming copy of the fixed point
// is dropped.
std::size_t distinct_count(const IterationTrace& trace) {
  return trace.converged ? trace.policies.size() - 1 : trace.policies.size();
}

int iterate_smoking(const RunConfig& cfg, std::ostream& os) {
  smoking::SmokingProblem p;
  p.horizon = cfg.smoking_horizon;
  const smoking::SmokingTrace trace = smoking::smoking_iterate(p, cfg.smoking_grid_n, cfg.max_steps);
  if (cfg.format == OutputFormat::Csv) {
    csv::Writer w(os, {"step", "quit_from", "quit_to"});
    const Json j = to_json(trace);
    long long step = 0;
    for (const Json& pol : j.at("policies")) {
      for (const Json& run : pol.at("quit_times")) w.row({step, run.at(0).get<double>(), run.at(1).get<double>()});
      ++step;
    }
    return kOk;
  }
  Json j = to_json(trace);
  j["s_star"] = smoking::s_star(cfg.roots);
  j["horizon"] = p.horizon;
  write_json(os, j);
  return kOk;
}

}  // namespace

int cmd_constants(const RunConfig& cfg, std::ostream& os) {
  const bessel::BesselProblem p = problem_of(cfg);
  const hitting::EtaContext ctx = p.eta_context();
  const double a_star = bessel::solve_a_star(p);
  const double naive = bessel::naive_threshold(p);
  const double x_star = bessel::solve_x_star(p, naive, a_star);
  const double s_star = smoking::s_star(cfg.roots);
  const double k_naive = hitting::k(ctx, naive);

  const double k_residual = hitting::k(ctx, a_star) - 1.0;
  const double eta_residual = hitting::eta(ctx, x_star, naive) - x_star;
  const double s_residual = std::exp(0.5 * s_star) - 1.0 - s_star;
  if (cfg.format == OutputFormat::Csv) {
    csv::Writer w(os, {"name", "value"});
    w.row({std::string("beta"), cfg.beta});
    w.row({std::string("a_star"), a_star});
    w.row({std::string("naive_threshold"), naive});
    w.row({std::string("x_star_of_naive"), x_star});
    w.row({std::string("s_star"), s_star});
    w.row({std::string("k_at_naive"), k_naive});
    return kOk;
  }
  Json j{{"beta", cfg.beta},
         {"a_star", a_star},
         {"naive_threshold", naive},
         {"x_star_of_naive", x_star},
         {"s_star", s_star},
         {"k_at_naive", k_naive},
         {"residuals", {{"k_a_star_minus_1", k_residual}, {"eta_minus_x_at_x_star", eta_residual},
                        {"s_star_equation", s_residual}}},
         {"tolerances", {{"quadrature_abs_tol", cfg.quad.abs_tol}, {"root_x_tol", cfg.roots.x_tol},
                         {"root_f_tol", cfg.roots.f_tol}}}};
  write_json(os, j);
  return kOk;
}

int cmd_iterate(const RunConfig& cfg, std::ostream& os) {
  if (cfg.problem == "smoking") return iterate_smoking(cfg, os);
  const auto eval = evaluator_of(cfg);
  const auto grid = state_grid(cfg);
  const double a0 = start_threshold(cfg);
  const IterationTrace trace = iterate(*eval, ThresholdPolicy::threshold(a0), grid, cfg.max_steps);

  auto write_csv = [&](std::ostream& out) {
    csv::Writer w(out, {"step", "lo", "hi"});
    for (std::size_t n = 0; n < distinct_count(trace); ++n) {
      policy_rows(w, static_cast<long long>(n), trace.policies[n]);
    }
  };
  if (!cfg.boundary_csv.empty()) {
    std::ofstream f(cfg.boundary_csv);
    if (!f) fail(ErrorCode::InvalidArgument, "cannot write " + cfg.boundary_csv);
    write_csv(f);
  }
  if (cfg.format == OutputFormat::Csv) {
    write_csv(os);
    return kOk;
  }
  Json j = to_json(trace);
  j["start_threshold"] = a0;
  j["grid"] = {{"lo", grid.front()}, {"hi", grid.back()}, {"n", grid.size()}};
  j["config"] = to_json(cfg);
  write_json(os, j);
  return kOk;
}

int cmd_boundary(const RunConfig& cfg, std::ostream& os) {
  const bessel::BesselProblem p = problem_of(cfg);
  if (cfg.n_samples > 1 && !(cfg.s_max > cfg.t)) fail(ErrorCode::TimeOrder, "s-max must exceed t");
  const std::vector<double> s = uniform_grid(cfg.t, cfg.n_samples > 1 ? cfg.s_max : cfg.t, cfg.n_samples);
  if (cfg.format == OutputFormat::Json) {
    Json rows = Json::array();
    for (double si : s) rows.push_back({{"s", si}, {"boundary", bessel::naive_boundary(p, cfg.t, si)}});
    write_json(os, Json{{"beta", cfg.beta}, {"t", cfg.t}, {"samples", rows}});
    return kOk;
  }
  csv::Writer w(os, {"s", "boundary"});
  for (double si : s) w.row({si, bessel::naive_boundary(p, cfg.t, si)});
  return kOk;
}

int cmd_classify(const RunConfig& cfg, std::ostream& os) {
  const auto eval = evaluator_of(cfg);
  const ThresholdPolicy policy = ThresholdPolicy::threshold(start_threshold(cfg));
  const std::vector<double> states = cfg.state ? std::vector<double>{*cfg.state} : state_grid(cfg);
  std::vector<RegionClassification> out;
  out.reserve(states.size());
  for (double x : states) out.push_back(classify_state(*eval, policy, x));
  if (cfg.format == OutputFormat::Csv) {
    csv::Writer w(os, {"x", "label", "g", "J_hat", "stderr"});
    for (const auto& c : out) {
      w.row({c.x, std::string(1, region_letter(c.label)), c.immediate_payoff, c.continuation_value, c.std_error});
    }
    return kOk;
  }
  Json rows = Json::array();
  for (const auto& c : out) rows.push_back(to_json(c));
  write_json(os, Json{{"policy", to_json(policy)}, {"evaluator", cfg.evaluator}, {"states", rows}});
  return kOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& os) {
  const bessel::BesselProblem p = problem_of(cfg);
  const hitting::EtaContext ctx = p.eta_context();
  Json checks = Json::array();
  bool all_pass = true;
  auto add = [&](const std::string& name, bool pass, double discrepancy, double tolerance, Json extra = Json::object()) {
    Json c{{"name", name}, {"pass", pass}, {"discrepancy", discrepancy}, {"tolerance", tolerance}};
    for (auto it = extra.begin(); it != extra.end(); ++it) c[it.key()] = it.value();
    checks.push_back(c);
    all_pass = all_pass && pass;
  };

  const double a_star = bessel::solve_a_star(p);
  const double k_res = std::abs(hitting::k(ctx, a_star) - 1.0);
  add("a_star_root_residual", k_res <= 1e-8, k_res, 1e-8);

  const double naive = bessel::naive_threshold(p);
  const double x_star = bessel::solve_x_star(p, naive, a_star);
  for (double frac : {0.0, 0.5}) {
    const double x = frac * naive;
    const mc::JEstimate est = mc::estimate_J(DiffusionModel::brownian(), cfg.effective_discount(), abs_payoff,
                                             ThresholdPolicy::threshold(naive), x, false, cfg.mc);
    const double exact = hitting::eta(ctx, x, naive);
    const double band = 3.0 * est.std_error;
    add("mc_vs_quadrature_x" + csv::format_number(x), std::abs(est.mean - exact) <= band,
        std::abs(est.mean - exact), band,
        Json{{"mc_mean", est.mean},
             {"quadrature", exact},
             {"std_error", est.std_error},
             {"wide_band", est.std_error > 1e-3},
             {"horizon_truncation", est.horizon_truncation()}});
  }

  const BrownianAnalyticEvaluator eval(1.0, DiscountFunction::hyperbolic(cfg.beta), abs_payoff, cfg.quad);
  const auto grid = state_grid(cfg);
  const ThresholdPolicy next = theta_step(eval, ThresholdPolicy::threshold(naive), grid);
  const auto found = next.threshold_value();
  const double step = grid[1] - grid[0];
  const double miss = found ? std::abs(*found - x_star) : kInf;
  add("grid_theta_vs_analytic_x_star", miss <= step, miss, step,
      Json{{"grid_threshold", found ? Json(*found) : Json(nullptr)}, {"x_star", x_star}});

  smoking::SmokingProblem sp;
  sp.horizon = cfg.smoking_horizon;
  const auto trace = smoking::smoking_iterate(sp, cfg.smoking_grid_n, cfg.max_steps);
  const double h = cfg.smoking_horizon / (cfg.smoking_grid_n - 1);
  const auto& theta = trace.policies[1];
  double last_quit = -1.0;
  for (std::size_t i = 0; i + 1 < theta.stop.size(); ++i) {
    if (theta.stop[i]) last_quit = theta.times[i];
  }
  const double expected = cfg.smoking_horizon - smoking::s_star(cfg.roots);
  const double smoke_miss = expected > 0 ? std::abs(last_quit - expected) : (last_quit < 0 ? 0.0 : kInf);
  add("smoking_theta_boundary", smoke_miss <= h && trace.steps == 2, smoke_miss, h,
      Json{{"theta_applications", trace.steps}});

  write_json(os, Json{{"pass", all_pass}, {"checks", checks}});
  return all_pass ? kOk : kValidationFailed;
}

int cmd_smoking(const RunConfig& cfg, std::ostream& os) {
  smoking::SmokingProblem p;
  p.horizon = cfg.smoking_horizon;
  const double s_star = smoking::s_star(cfg.roots);
  const auto trace = smoking::smoking_iterate(p, cfg.smoking_grid_n, cfg.max_steps);
  const auto& theta = trace.policies[1];
  const double h = p.horizon / (cfg.smoking_grid_n - 1);
  const std::vector<double> ts = uniform_grid(0.0, p.horizon, 20);

  struct Row {
    double t, naive, theta, grid_theta;
  };
  std::vector<Row> rows;
  for (double t : ts) {
    const auto i = static_cast<std::size_t>(std::lround(t / h));
    rows.push_back({t, smoking::smoking_naive(p.horizon, t), smoking::smoking_theta(p.horizon, t),
                    theta.quit_time(std::min(i, theta.times.size() - 1))});
  }
  if (cfg.format == OutputFormat::Csv) {
    csv::Writer w(os, {"t", "naive", "theta", "grid_theta"});
    for (const Row& r : rows) w.row({r.t, r.naive, r.theta, r.grid_theta});
    return kOk;
  }
  Json jr = Json::array();
  for (const Row& r : rows) jr.push_back({{"t", r.t}, {"naive", r.naive}, {"theta", r.theta}, {"grid_theta", r.grid_theta}});
  write_json(os, Json{{"horizon", p.horizon},
                      {"s_star", s_star},
                      {"theta_applications", trace.steps},
                      {"equilibrium", trace.converged && trace.policies[1] == trace.policies.back()},
                      {"rows", jr}});
  return kOk;
}

int run(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  try {
    cfg.validate();
    std::ofstream file;
    if (!cfg.out.empty()) {
      file.open(cfg.out);
      if (!file) fail(ErrorCode::InvalidArgument, "cannot write " + cfg.out);
    }
    std::ostream& out = cfg.out.empty() ? os : file;
    if (cfg.command == "constants") return cmd_constants(cfg, out);
    if (cfg.command == "iterate") return cmd_iterate(cfg, out);
    if (cfg.command == "boundary") return cmd_boundary(cfg, out);
    if (cfg.command == "classify") return cmd_classify(cfg, out);
    if (cfg.command == "validate") return cmd_validate(cfg, out);
    if (cfg.command == "smoking") return cmd_smoking(cfg, out);
    fail(ErrorCode::InvalidArgument, "unknown command '" + cfg.command + "'");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::NonConvergence:
      case ErrorCode::MaxIterExceeded:
      case ErrorCode::ToleranceNotMet:
      case ErrorCode::NoSignChange:
        return kNonConvergence;
      default:
        return kConfigError;
    }
  }
}

}  // namespace eqstop::cli
