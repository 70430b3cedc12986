#include "stabilis/config.hpp"

#include <cmath>
#include <string>

namespace stabilis {

std::string_view to_string(Direction d) {
  return d == Direction::contraction ? "contraction" : "dilation";
}

Direction parse_direction(std::string_view text) {
  if (text == "contraction") return Direction::contraction;
  if (text == "dilation") return Direction::dilation;
  throw ConfigError("unknown direction '" + std::string(text) + "'");
}

std::vector<Point> ProbeGrid::points(std::size_t dim) const {
  if (dim == 0) throw DimensionError("probe grid dimension must be >= 1");
  if (points_per_axis < 1 || !(radius > 0.0)) throw ConfigError("invalid probe grid");
  std::vector<double> axis(static_cast<std::size_t>(points_per_axis));
  for (int i = 0; i < points_per_axis; ++i)
    axis[i] = points_per_axis == 1 ? 0.0 : -radius + 2.0 * radius * i / (points_per_axis - 1);

  std::size_t total = 1;
  for (std::size_t k = 0; k < dim; ++k) total *= axis.size();
  std::vector<Point> out;
  out.reserve(total);
  std::vector<std::size_t> idx(dim, 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::vector<double> c(dim);
    for (std::size_t k = 0; k < dim; ++k) c[k] = axis[idx[k]];
    out.emplace_back(std::move(c));
    for (std::size_t k = dim; k-- > 0;) {
      if (++idx[k] < axis.size()) break;
      idx[k] = 0;
    }
  }
  return out;
}

void ExtractionConfig::validate() const {
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) throw ConfigError("tolerance must be > 0");
  if (!(argument_cap > 0.0)) throw ConfigError("argument_cap must be > 0");
  if (series_terms < 1) throw ConfigError("series_terms must be >= 1");
}

}  // namespace stabilis
