#include "run_config.hpp"

#include <fstream>
#include <sstream>

#include "eqstop/error.hpp"

namespace eqstop::cli {

namespace {

std::vector<double> split_numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  ss.imbue(std::locale::classic());
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    is.imbue(std::locale::classic());
    double v = 0.0;
    if (!(is >> v) || !is.eof()) fail(ErrorCode::InvalidArgument, "bad number '" + item + "' in discount spec");
    out.push_back(v);
  }
  return out;
}

template <class T>
void take(const Json& j, const char* key, T& field) {
  if (j.contains(key) && !j.at(key).is_null()) field = j.at(key).get<T>();
}

}  // namespace

OutputFormat format_from_string(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  fail(ErrorCode::InvalidArgument, "format must be json or csv, got '" + s + "'");
}

DiscountFunction parse_discount(const std::string& spec, double beta) {
  const auto colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  const std::vector<double> args =
      colon == std::string::npos ? std::vector<double>{} : split_numbers(spec.substr(colon + 1));
  auto arg = [&](std::size_t i, double fallback) { return i < args.size() ? args[i] : fallback; };
  switch (discount_family_from_string(family)) {
    case DiscountFamily::Hyperbolic:
      return DiscountFunction::hyperbolic(arg(0, beta));
    case DiscountFamily::Exponential:
      return DiscountFunction::exponential(arg(0, 1.0));
    case DiscountFamily::QuasiHyperbolic:
      return DiscountFunction::quasi_hyperbolic(arg(0, 0.7), arg(1, 1.0));
    case DiscountFamily::Custom:
      break;
  }
  fail(ErrorCode::InvalidArgument, "custom discounts are not available from the command line");
}

DiscountFunction RunConfig::effective_discount() const {
  return discount ? *discount : DiscountFunction::hyperbolic(beta);
}

void RunConfig::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) fail(ErrorCode::InvalidBeta, "beta must be > 0");
  if (problem != "bessel" && problem != "smoking") fail(ErrorCode::InvalidArgument, "problem must be bessel or smoking");
  if (evaluator != "analytic" && evaluator != "mc") fail(ErrorCode::InvalidArgument, "evaluator must be analytic or mc");
  if (grid_n < 2) fail(ErrorCode::InvalidArgument, "grid-n must be >= 2");
  if (max_steps < 1) fail(ErrorCode::InvalidArgument, "max-steps must be >= 1");
  if (n_samples < 1) fail(ErrorCode::InvalidArgument, "n-samples must be >= 1");
  if (start_threshold && !(*start_threshold >= 0.0)) fail(ErrorCode::InvalidArgument, "start threshold must be >= 0");
  quad.validate();
  roots.validate();
  mc.validate();
}

void apply_json(RunConfig& cfg, const Json& j) {
  try {
    take(j, "problem", cfg.problem);
    take(j, "beta", cfg.beta);
    if (j.contains("discount")) {
      const Json& d = j.at("discount");
      cfg.discount = d.is_string() ? parse_discount(d.get<std::string>(), cfg.beta) : discount_from_json(d);
    }
    if (j.contains("start_threshold") && !j.at("start_threshold").is_null()) {
      cfg.start_threshold = j.at("start_threshold").get<double>();
    }
    take(j, "evaluator", cfg.evaluator);
    take(j, "grid_n", cfg.grid_n);
    take(j, "max_steps", cfg.max_steps);
    if (j.contains("state") && !j.at("state").is_null()) cfg.state = j.at("state").get<double>();
    take(j, "t", cfg.t);
    take(j, "s_max", cfg.s_max);
    take(j, "n_samples", cfg.n_samples);
    take(j, "smoking_horizon", cfg.smoking_horizon);
    take(j, "smoking_grid_n", cfg.smoking_grid_n);
    if (j.contains("quadrature")) {
      const Json& q = j.at("quadrature");
      take(q, "node_count", cfg.quad.node_count);
      take(q, "truncation", cfg.quad.truncation);
      take(q, "abs_tol", cfg.quad.abs_tol);
    }
    if (j.contains("roots")) {
      const Json& r = j.at("roots");
      take(r, "x_tol", cfg.roots.x_tol);
      take(r, "f_tol", cfg.roots.f_tol);
      take(r, "max_iter", cfg.roots.max_iter);
    }
    if (j.contains("monte_carlo")) {
      const Json& m = j.at("monte_carlo");
      take(m, "n_paths", cfg.mc.n_paths);
      take(m, "dt", cfg.mc.dt);
      take(m, "horizon", cfg.mc.horizon);
      take(m, "seed", cfg.mc.master_seed);
      take(m, "bridge_correction", cfg.mc.bridge_correction);
      take(m, "threads", cfg.mc.threads);
    }
    take(j, "out", cfg.out);
    take(j, "boundary_csv", cfg.boundary_csv);
    if (j.contains("format")) cfg.format = format_from_string(j.at("format").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("bad config: ") + e.what());
  }
}

RunConfig config_from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::InvalidArgument, "cannot open config " + path);
  Json j;
  try {
    j = Json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidArgument, "config " + path + " is not valid JSON: " + e.what());
  }
  RunConfig cfg;
  apply_json(cfg, j);
  return cfg;
}

Json to_json(const RunConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  j["problem"] = cfg.problem;
  j["beta"] = cfg.beta;
  j["discount"] = eqstop::to_json(cfg.effective_discount());
  j["start_threshold"] = cfg.start_threshold ? Json(*cfg.start_threshold) : Json(nullptr);
  j["evaluator"] = cfg.evaluator;
  j["grid_n"] = cfg.grid_n;
  j["quadrature"] = {{"node_count", cfg.quad.node_count}, {"truncation", cfg.quad.truncation},
                     {"abs_tol", cfg.quad.abs_tol}};
  j["roots"] = {{"x_tol", cfg.roots.x_tol}, {"f_tol", cfg.roots.f_tol}, {"max_iter", cfg.roots.max_iter}};
  j["monte_carlo"] = {{"n_paths", cfg.mc.n_paths},
                      {"dt", cfg.mc.dt},
                      {"horizon", cfg.mc.horizon},
                      {"seed", cfg.mc.master_seed},
                      {"bridge_correction", cfg.mc.bridge_correction}};
  return j;
}

}  // namespace eqstop::cli
