#pragma once

#include <functional>
#include <vector>

#include "meridian/curve.hpp"

namespace meridian::detail {

// Marching squares on a node grid: extracts the closed level-c contours of a
// scalar field given at nodes (x0 + i h, y0 + j h). Open chains that hit the
// grid frame are discarded; callers only need closed loops.
std::vector<ClosedCurve> extract_level_loops(const std::vector<double>& values, int nx, int ny,
                                             double x0, double y0, double h, double level);

} // namespace meridian::detail
