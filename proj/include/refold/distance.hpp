#pragma once

#include <cmath>
#include <span>
#include <string>
#include <string_view>

#include "refold/error.hpp"

namespace refold {

/// Distance to the origin, normalized by dimensionality.
enum class DistanceMetric { l1_over_d, l2_over_d };

inline constexpr std::string_view to_string(DistanceMetric m) noexcept {
  return m == DistanceMetric::l1_over_d ? "l1" : "l2";
}

inline DistanceMetric parse_distance_metric(std::string_view name) {
  if (name == "l1" || name == "l1_over_d" || name == "L1/D") return DistanceMetric::l1_over_d;
  if (name == "l2" || name == "l2_over_d" || name == "L2/D") return DistanceMetric::l2_over_d;
  fail(ErrorKind::config, "unknown distance metric '" + std::string(name) + "' (expected l1 or l2)");
}

inline double distance_to_origin(DistanceMetric metric, std::span<const double> v) {
  if (v.empty()) fail(ErrorKind::shape, "distance of an empty vector");
  const auto dim = static_cast<double>(v.size());
  double acc = 0.0;
  if (metric == DistanceMetric::l1_over_d) {
    for (double x : v) acc += std::fabs(x);
    return acc / dim;
  }
  for (double x : v) acc += x * x;
  return std::sqrt(acc) / dim;
}

}  // namespace refold
