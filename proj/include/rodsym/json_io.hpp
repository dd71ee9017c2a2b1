#pragma once

// File formats:
//   StepFunction   {"interval":[lo,hi],"breakpoints":[b0,...,bk],"values":[v1,...,vk]}
//   PiecewisePoly  same, with "coeffs":[[c0,c1,c2],...] in place of "values"
// Doubles are written with round-trip precision.

#include <json.hpp>

#include "rodsym/piecewise.hpp"

namespace rodsym {

nlohmann::json to_json(const Interval& d);
nlohmann::json to_json(const StepFunction& f);
nlohmann::json to_json(const PiecewisePoly& p);

// Throws ParameterError when the document does not match the schema.
StepFunction step_function_from_json(const nlohmann::json& j);
PiecewisePoly piecewise_poly_from_json(const nlohmann::json& j);

}  // namespace rodsym
