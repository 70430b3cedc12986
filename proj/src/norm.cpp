#include "stabilis/norm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stabilis {

double norm(std::span<const double> coords, NormSpec spec) {
  double acc = 0.0;
  for (double c : coords) {
    if (!std::isfinite(c)) throw InvalidValue("norm of non-finite value");
    if (spec.kind == NormKind::max_coordinate)
      acc = std::max(acc, std::abs(c));
  }
  if (spec.kind == NormKind::euclidean) {
    // hypot-style accumulation avoids overflow for large iterates
    double scale = 0.0;
    for (double c : coords) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return 0.0;
    for (double c : coords) acc += (c / scale) * (c / scale);
    return scale * std::sqrt(acc);
  }
  return acc;
}

std::string_view to_string(NormKind kind) {
  return kind == NormKind::euclidean ? "euclidean" : "max";
}

NormKind parse_norm_kind(std::string_view text) {
  if (text == "max" || text == "max-coordinate") return NormKind::max_coordinate;
  if (text == "euclidean" || text == "l2") return NormKind::euclidean;
  throw ConfigError("unknown norm '" + std::string(text) + "'");
}

}  // namespace stabilis
