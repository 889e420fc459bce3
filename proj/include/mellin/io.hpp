#pragma once

#include <nlohmann/json.hpp>

#include "mellin/pricer.hpp"

namespace mellin {

inline nlohmann::json surface_to_json(const PriceSurface& surface) {
  const auto& g = surface.grid;
  nlohmann::json j;
  j["grid"] = {{"N", g.N}, {"a", g.a}, {"delta", g.delta}, {"lambda", g.lambda}, {"M", g.M}};
  j["tau"] = surface.tau;
  j["style"] = to_string(surface.style);
  j["values"] = surface.values;
  return j;
}

}  // namespace mellin
