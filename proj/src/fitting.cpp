#include "circlelab/fitting.hpp"

namespace circlelab {

ScaleFitReport slope_fit(const std::vector<std::pair<BigFloat, BigFloat>>& pts) {
    const size_t n = pts.size();
    if (n < 2) throw DegenerateFitError("slope_fit: need at least 2 points");

    mpfr_prec_t prec = 64;
    for (const auto& [x, y] : pts)
        prec = std::max(prec, std::max(x.precision(), y.precision()));

    BigFloat sx(0L, prec), sy(0L, prec), sxx(0L, prec), sxy(0L, prec);
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const BigFloat den = BigFloat(static_cast<long>(n), prec) * sxx - sx * sx;
    if (den.is_zero() || !den.is_finite())
        throw DegenerateFitError("slope_fit: abscissae are degenerate (vertical or single column)");

    ScaleFitReport rep;
    rep.points = pts;
    rep.slope = (BigFloat(static_cast<long>(n), prec) * sxy - sx * sy) / den;
    rep.intercept = (sy - rep.slope * sx) / BigFloat(static_cast<long>(n), prec);
    rep.max_abs_residual = BigFloat(0L, prec);
    for (const auto& [x, y] : pts) {
        BigFloat r = abs(y - (rep.slope * x + rep.intercept));
        if (r > rep.max_abs_residual) rep.max_abs_residual = r;
    }
    return rep;
}

ScaleFitReport log_slope_fit(const std::vector<std::pair<BigFloat, BigFloat>>& pts) {
    std::vector<std::pair<BigFloat, BigFloat>> logs;
    logs.reserve(pts.size());
    for (const auto& [x, y] : pts) {
        if (y.is_zero()) continue;
        logs.emplace_back(log10(x), log10(abs(y)));
    }
    return slope_fit(logs);
}

}  // namespace circlelab
