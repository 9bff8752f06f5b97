#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "eqstop/discounting.hpp"
#include "eqstop/montecarlo.hpp"
#include "eqstop/numerics.hpp"
#include "eqstop/serialization.hpp"

namespace eqstop::cli {

enum class OutputFormat { Json, Csv };

struct RunConfig {
  std::string command;
  std::string problem = "bessel";  // bessel | smoking
  double beta = 1.0;
  // Empty means hyperbolic with the problem's beta.
  std::optional<DiscountFunction> discount;
  std::optional<double> start_threshold;  // default: the naive threshold
  std::string evaluator = "analytic";     // analytic | mc
  int grid_n = 2001;
  int max_steps = 20;
  std::optional<double> state;  // classify a single state

  double t = 0.0;
  double s_max = 15.0;
  int n_samples = 151;
  double smoking_horizon = 10.0;
  int smoking_grid_n = 10001;

  numerics::QuadratureSpec quad{};
  numerics::RootSpec roots{};
  mc::MonteCarloSpec mc{};

  std::string out;  // empty: stdout
  std::string boundary_csv;
  OutputFormat format = OutputFormat::Json;

  DiscountFunction effective_discount() const;
  void validate() const;
};

OutputFormat format_from_string(const std::string& s);

// Overlays the fields present in j onto cfg.
void apply_json(RunConfig& cfg, const Json& j);
RunConfig config_from_file(const std::string& path);

// Parses "hyperbolic", "hyperbolic:2", "exponential:0.5" or
// "quasi_hyperbolic:0.7,0.1".
DiscountFunction parse_discount(const std::string& spec, double beta);

Json to_json(const RunConfig& cfg);

}  // namespace eqstop::cli
