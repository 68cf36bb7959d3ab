#pragma once

#include <cmath>

#include <json.hpp>

#include "asymspec/family.hpp"

namespace asymspec::detail {

// JSON has no infinities; non-finite values are written as strings.
inline nlohmann::json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline nlohmann::json numbers(std::span<const double> vs) {
  nlohmann::json arr = nlohmann::json::array();
  for (double v : vs) arr.push_back(number(v));
  return arr;
}

inline nlohmann::json tail_json(const TailEstimate& t) {
  return {{"tail_value", number(t.value)},
          {"trend", to_string(t.trend)},
          {"window_values", numbers(t.window_values)}};
}

}  // namespace asymspec::detail
