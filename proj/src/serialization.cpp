#include "eqstop/serialization.hpp"

#include <cmath>
#include <limits>

#include "eqstop/error.hpp"

namespace eqstop {

Json to_json(const DiscountFunction& d) {
  Json params = Json::object();
  switch (d.family()) {
    case DiscountFamily::Exponential:
      params["rho"] = d.rho();
      break;
    case DiscountFamily::Hyperbolic:
      params["beta"] = d.beta();
      break;
    case DiscountFamily::QuasiHyperbolic:
      params["delta0"] = d.delta0();
      params["rho"] = d.rho();
      break;
    case DiscountFamily::Custom:
      params["name"] = d.name();
      break;
  }
  return Json{{"family", std::string(to_string(d.family()))}, {"params", params}};
}

DiscountFunction discount_from_json(const Json& j) {
  try {
    const DiscountFamily family = discount_family_from_string(j.at("family").get<std::string>());
    const Json& params = j.contains("params") ? j.at("params") : Json::object();
    switch (family) {
      case DiscountFamily::Exponential:
        return DiscountFunction::exponential(params.value("rho", 1.0));
      case DiscountFamily::Hyperbolic:
        return DiscountFunction::hyperbolic(params.value("beta", 1.0));
      case DiscountFamily::QuasiHyperbolic:
        return DiscountFunction::quasi_hyperbolic(params.value("delta0", 1.0), params.value("rho", 1.0));
      case DiscountFamily::Custom:
        break;
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("bad discount json: ") + e.what());
  }
  fail(ErrorCode::Unsupported, "custom discount functions cannot be deserialized");
}

Json to_json(const ThresholdPolicy& policy) {
  Json out = Json::array();
  for (const Interval& iv : policy.intervals()) {
    Json hi = std::isinf(iv.hi) ? Json(nullptr) : Json(iv.hi);
    out.push_back(Json::array({iv.lo, hi}));
  }
  return out;
}

ThresholdPolicy policy_from_json(const Json& j) {
  std::vector<Interval> ivs;
  try {
    for (const Json& pair : j) {
      const double lo = pair.at(0).get<double>();
      const double hi = pair.at(1).is_null() ? std::numeric_limits<double>::infinity() : pair.at(1).get<double>();
      ivs.push_back({lo, hi});
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("bad policy json: ") + e.what());
  }
  return ThresholdPolicy(std::move(ivs));
}

Json to_json(const bessel::EquilibriumReport& r) {
  return Json{{"a_star", r.a_star},
              {"naive_threshold", r.naive_threshold},
              {"x_star_of_naive", r.x_star_of_naive},
              {"start_threshold", r.start_threshold},
              {"fixed_point", r.fixed_point},
              {"iterations_to_equilibrium", r.iterations_to_equilibrium},
              {"formal_theta_applications", r.formal_theta_applications},
              {"equilibrium_set", Json::array({0.0, r.a_star})},
              {"equilibrium_set_description", r.equilibrium_set_description}};
}

Json to_json(const IterationTrace& trace) {
  Json policies = Json::array();
  for (const auto& p : trace.policies) policies.push_back(to_json(p));
  Json monotone = Json::array();
  for (bool b : trace.monotone_ok) monotone.push_back(b);
  return Json{{"policies", policies}, {"monotone_ok", monotone}, {"converged", trace.converged}, {"steps", trace.steps}};
}

Json to_json(const mc::JEstimate& est) {
  return Json{{"mean", est.mean},
              {"std_error", est.std_error},
              {"n_effective", est.n_effective},
              {"truncated_fraction", est.truncated_fraction},
              {"horizon_truncation", est.horizon_truncation()}};
}

Json to_json(const RegionClassification& c) {
  return Json{{"x", c.x},
              {"label", std::string(1, region_letter(c.label))},
              {"immediate_payoff", c.immediate_payoff},
              {"continuation_value", c.continuation_value},
              {"std_error", c.std_error},
              {"horizon_truncation", c.horizon_truncation}};
}

Json to_json(const smoking::SmokingTrace& trace) {
  Json policies = Json::array();
  for (const auto& p : trace.policies) {
    Json runs = Json::array();
    for (std::size_t i = 0; i < p.stop.size();) {
      if (!p.stop[i]) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < p.stop.size() && p.stop[j + 1]) ++j;
      runs.push_back(Json::array({p.times[i], p.times[j]}));
      i = j + 1;
    }
    policies.push_back(Json{{"quit_times", runs}});
  }
  return Json{{"policies", policies}, {"converged", trace.converged}, {"steps", trace.steps}};
}

}  // namespace eqstop
