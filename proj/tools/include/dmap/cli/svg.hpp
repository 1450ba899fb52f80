#pragma once

#include <optional>
#include <string>

#include "dmap/sge.hpp"

namespace dmap::cli {

/// Scatter of the first two columns (a single column is plotted against the
/// point index). One <circle> per point, colored by `color_by` if given.
std::string scatter_svg(const Matrix& coords,
                        const std::optional<Vector>& color_by,
                        const std::string& title);

/// SGE against t on a log axis with a tick per grid point. Every evaluated
/// grid point gets one <circle>; the selected one is filled red.
std::string sge_curve_svg(const SGECurve& curve, const std::string& title);

}  // namespace dmap::cli
