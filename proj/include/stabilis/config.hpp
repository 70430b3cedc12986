#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "stabilis/norm.hpp"
#include "stabilis/vector.hpp"

namespace stabilis {

/// Scaling direction of the stability limits. Contraction evaluates at
/// x / 2^n (s = 1), dilation at 2^n x (s = -1).
enum class Direction { contraction, dilation };

constexpr int sign_of(Direction d) { return d == Direction::contraction ? 1 : -1; }
std::string_view to_string(Direction d);
Direction parse_direction(std::string_view text);

/// Equispaced tensor grid on [-radius, radius]^d.
struct ProbeGrid {
  double radius = 2.0;
  int points_per_axis = 41;

  std::vector<Point> points(std::size_t dim) const;
};

struct ExtractionConfig {
  std::optional<Direction> direction;  // empty: choose per component
  int max_iterations = 40;
  double tolerance = 1e-9;
  NormSpec norm;
  double argument_cap = 1e12;
  ProbeGrid probe;
  int series_terms = 64;

  void validate() const;
};

}  // namespace stabilis
