#pragma once

#include <utility>
#include <vector>

#include "circlelab/bigfloat.hpp"

namespace circlelab {

// Result of an ordinary least-squares line fit through (x, y) samples,
// typically log10(scale) against log10(quantity) when estimating decay
// exponents.
struct ScaleFitReport {
    std::vector<std::pair<BigFloat, BigFloat>> points;
    BigFloat slope;
    BigFloat intercept;
    BigFloat max_abs_residual;
};

// Least-squares line through the given samples, evaluated at the operands'
// precision in input order (deterministic). Throws DegenerateFitError when
// fewer than two samples are given or all abscissae coincide.
ScaleFitReport slope_fit(const std::vector<std::pair<BigFloat, BigFloat>>& pts);

// Convenience: fit log10|y| against log10(x), skipping any sample with
// y == 0 exactly (those carry no scale information).
ScaleFitReport log_slope_fit(const std::vector<std::pair<BigFloat, BigFloat>>& pts);

}  // namespace circlelab
