#include "rodsym/json_io.hpp"

#include <string>
#include <vector>

#include "rodsym/errors.hpp"

namespace rodsym {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParameterError("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParameterError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::vector<double> numbers(const json& j, const char* key) {
  const json& arr = field(j, key);
  if (!arr.is_array()) {
    throw ParameterError(std::string("field \"") + key + "\" must be an array");
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& x : arr) {
    if (!x.is_number()) {
      throw ParameterError(std::string("field \"") + key + "\" must hold numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

Interval interval_from(const json& j) {
  const auto bounds = numbers(j, "interval");
  if (bounds.size() != 2) throw ParameterError("\"interval\" must be [lo, hi]");
  return Interval(bounds[0], bounds[1]);
}

}  // namespace

json to_json(const Interval& d) { return json::array({d.lo(), d.hi()}); }

json to_json(const StepFunction& f) {
  return json{{"interval", to_json(f.domain())},
              {"breakpoints", std::vector<double>(f.breakpoints().begin(),
                                                  f.breakpoints().end())},
              {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

json to_json(const PiecewisePoly& p) {
  json coeffs = json::array();
  for (const auto& q : p.pieces()) coeffs.push_back({q.c0, q.c1, q.c2});
  return json{{"interval", to_json(p.domain())},
              {"breakpoints", std::vector<double>(p.breakpoints().begin(),
                                                  p.breakpoints().end())},
              {"coeffs", std::move(coeffs)}};
}

StepFunction step_function_from_json(const json& j) {
  return StepFunction(interval_from(j), numbers(j, "breakpoints"), numbers(j, "values"));
}

PiecewisePoly piecewise_poly_from_json(const json& j) {
  const json& arr = field(j, "coeffs");
  if (!arr.is_array()) throw ParameterError("\"coeffs\" must be an array");
  std::vector<Quadratic> coeffs;
  coeffs.reserve(arr.size());
  for (const auto& c : arr) {
    if (!c.is_array() || c.size() != 3) {
      throw ParameterError("each coefficient entry must be [c0, c1, c2]");
    }
    for (const auto& x : c) {
      if (!x.is_number()) throw ParameterError("coefficients must be numbers");
    }
    coeffs.push_back({c[0].get<double>(), c[1].get<double>(), c[2].get<double>()});
  }
  return PiecewisePoly(interval_from(j), numbers(j, "breakpoints"), std::move(coeffs));
}

}  // namespace rodsym
