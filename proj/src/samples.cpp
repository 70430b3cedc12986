#include "stabilis/samples.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>

#include "stabilis/errors.hpp"

namespace stabilis {

namespace {

struct Grid {
  std::vector<std::vector<double>> axes;  // sorted coordinates per axis
  std::vector<Value> nodes;               // row-major, last axis fastest
  std::size_t outputs = 0;
};

std::size_t axis_index(const std::vector<double>& axis, double x) {
  const auto it = std::lower_bound(axis.begin(), axis.end(), x);
  return static_cast<std::size_t>(it - axis.begin());
}

// Index of the cell [axis[k], axis[k+1]] holding x, clamped to the last cell.
std::size_t cell_of(const std::vector<double>& axis, double x) {
  std::size_t k = axis_index(axis, x);
  if (k > 0) --k;
  return std::min(k, axis.size() - 2);
}

Grid build_grid(const std::vector<std::vector<double>>& points,
                const std::vector<std::vector<double>>& values) {
  const std::size_t dim = points.front().size();
  Grid grid;
  grid.outputs = values.front().size();
  grid.axes.resize(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    auto& axis = grid.axes[a];
    for (const auto& p : points) axis.push_back(p[a]);
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    if (axis.size() < 2) throw SchemaError("samples need at least two distinct coordinates per axis");
  }
  std::size_t total = 1;
  for (const auto& axis : grid.axes) total *= axis.size();
  if (total != points.size()) {
    std::ostringstream os;
    os << "samples in " << dim << " dimensions must form a rectilinear grid: " << points.size()
       << " points for " << total << " grid nodes";
    throw SchemaError(os.str());
  }
  grid.nodes.assign(total, Value{});
  std::vector<bool> seen(total, false);
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::size_t flat = 0;
    for (std::size_t a = 0; a < dim; ++a) flat = flat * grid.axes[a].size() + axis_index(grid.axes[a], points[i][a]);
    if (seen[flat]) throw SchemaError("duplicate sample point");
    seen[flat] = true;
    grid.nodes[flat] = Value(values[i]);
  }
  return grid;
}

Value interpolate(const Grid& grid, const Point& x) {
  const std::size_t dim = grid.axes.size();
  std::vector<std::size_t> cell(dim);
  std::vector<double> t(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    const auto& axis = grid.axes[a];
    cell[a] = cell_of(axis, x[a]);
    t[a] = (x[a] - axis[cell[a]]) / (axis[cell[a] + 1] - axis[cell[a]]);
  }
  Value out = Value::zeros(grid.outputs);
  for (std::size_t corner = 0; corner < (std::size_t{1} << dim); ++corner) {
    double w = 1.0;
    std::size_t flat = 0;
    for (std::size_t a = 0; a < dim; ++a) {
      const bool upper = (corner >> a) & 1U;
      w *= upper ? t[a] : 1.0 - t[a];
      flat = flat * grid.axes[a].size() + cell[a] + (upper ? 1 : 0);
    }
    if (w != 0.0) out.add_scaled(w, grid.nodes[flat]);
  }
  return out;
}

}  // namespace

FunctionHandle sampled_function(const std::vector<std::vector<double>>& points,
                                const std::vector<std::vector<double>>& values) {
  if (points.empty()) throw SchemaError("samples need at least one point");
  if (points.size() != values.size())
    throw DimensionError("samples have " + std::to_string(points.size()) + " points but " +
                         std::to_string(values.size()) + " values");
  const std::size_t dim = points.front().size();
  const std::size_t outputs = values.front().size();
  if (dim == 0 || outputs == 0) throw SchemaError("sample points and values must be nonempty");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) throw SchemaError("ragged sample points");
    if (values[i].size() != outputs) throw SchemaError("ragged sample values");
    static_cast<void>(Point(points[i]));  // finiteness check
    static_cast<void>(Value(values[i]));
  }

  auto grid = std::make_shared<const Grid>(build_grid(points, values));
  std::vector<double> lo(dim), hi(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    lo[a] = grid->axes[a].front();
    hi[a] = grid->axes[a].back();
  }
  std::ostringstream desc;
  desc << "samples(" << points.size() << " points, d=" << dim << ", m=" << outputs << ")";
  return FunctionHandle(
      dim, outputs, [grid](const Point& x) { return interpolate(*grid, x); }, desc.str(),
      Box{Point(lo), Point(hi)});
}

}  // namespace stabilis
