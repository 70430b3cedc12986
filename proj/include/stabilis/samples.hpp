#pragma once

#include <vector>

#include "stabilis/function_handle.hpp"

namespace stabilis {

/// Builds a handle that interpolates tabulated values.
///
/// In one dimension the points may be scattered; the handle is the piecewise
/// linear interpolant on [min, max]. In higher dimensions the points must
/// cover a rectilinear grid (every combination of the per-axis coordinates
/// exactly once) and the handle interpolates multilinearly inside the
/// bounding box. Evaluation outside the hull throws DomainError.
///
/// Throws SchemaError for ragged or duplicated input and DimensionError when
/// points and values disagree in count.
FunctionHandle sampled_function(const std::vector<std::vector<double>>& points,
                                const std::vector<std::vector<double>>& values);

}  // namespace stabilis
