#pragma once

#include <json.hpp>

#include "eqstop/bessel_equilibrium.hpp"
#include "eqstop/discounting.hpp"
#include "eqstop/montecarlo.hpp"
#include "eqstop/policy_engine.hpp"
#include "eqstop/smoking.hpp"
#include "eqstop/stop_set.hpp"

namespace eqstop {

using Json = nlohmann::ordered_json;

// {"family": "hyperbolic", "params": {"beta": 1}}. Custom discounts cannot be
// read back.
Json to_json(const DiscountFunction& d);
DiscountFunction discount_from_json(const Json& j);

// Intervals as [lo, hi] pairs; an unbounded hi is written as null.
Json to_json(const ThresholdPolicy& policy);
ThresholdPolicy policy_from_json(const Json& j);

Json to_json(const bessel::EquilibriumReport& r);
Json to_json(const IterationTrace& trace);
Json to_json(const mc::JEstimate& est);
Json to_json(const RegionClassification& c);

// Quitting-time intervals of each policy in the trace.
Json to_json(const smoking::SmokingTrace& trace);

}  // namespace eqstop
