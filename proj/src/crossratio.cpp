#include "circlelab/crossratio.hpp"

#include <cmath>

#include "circlelab/errors.hpp"

namespace circlelab::crossratio {

namespace {

BigFloat hull_min(const BigFloat& a, const BigFloat& b, const BigFloat& c) {
    return min(a, min(b, c));
}

BigFloat hull_max(const BigFloat& a, const BigFloat& b, const BigFloat& c) {
    return max(a, max(b, c));
}

}  // namespace

BigFloat cross_ratio(const Quad& q) {
    const BigFloat* p[4] = {&q.x1, &q.x2, &q.x3, &q.x4};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (*p[i] == *p[j])
                throw DomainError("cross_ratio: points must be pairwise distinct (x" +
                                  std::to_string(i + 1) + " = x" + std::to_string(j + 1) + ")");
    return ((q.x1 - q.x2) * (q.x3 - q.x4)) / ((q.x2 - q.x3) * (q.x4 - q.x1));
}

DistortionValue ratio_distortion(const BigFloat& x1, const BigFloat& x2, const BigFloat& x3,
                                 const SmoothMap& f) {
    unsigned mask = kNoCoincidence;
    BigFloat num, den;
    if (x1 == x2) {
        mask |= kX1X2;
        num = f.jet_at(x1).d1;
    } else {
        num = (f.jet_at(x1).value - f.jet_at(x2).value) / (x1 - x2);
    }
    if (x2 == x3) {
        mask |= kX2X3;
        den = f.jet_at(x2).d1;
    } else {
        den = (f.jet_at(x2).value - f.jet_at(x3).value) / (x2 - x3);
    }
    if (den.is_zero())
        throw DomainError("ratio_distortion: vanishing difference quotient (map not injective "
                          "on the hull?)");
    return DistortionValue{num / den, mask};
}

DistortionValue cross_ratio_distortion(const Quad& q, const SmoothMap& f) {
    DistortionValue a = ratio_distortion(q.x1, q.x2, q.x3, f);
    DistortionValue b = ratio_distortion(q.x1, q.x4, q.x3, f);
    // remap b's slot-wise flags to the quad's labels: its middle point is x4
    unsigned mask = a.coincidence_mask;
    if (b.coincidence_mask & kX1X2) mask |= kX1X4;
    if (b.coincidence_mask & kX2X3) mask |= kX4X3;
    return DistortionValue{a.value / b.value, mask};
}

MultiplicativityResiduals check_multiplicativity(const Quad& q, const SmoothMap& f,
                                                 const SmoothMap& g) {
    ComposedMap fg(f, g);
    BigFloat d_fg = ratio_distortion(q.x1, q.x2, q.x3, fg).value;
    BigFloat d_g = ratio_distortion(q.x1, q.x2, q.x3, g).value;
    BigFloat d_f =
        ratio_distortion(g.jet_at(q.x1).value, g.jet_at(q.x2).value, g.jet_at(q.x3).value, f)
            .value;

    Quad gq{g.jet_at(q.x1).value, g.jet_at(q.x2).value, g.jet_at(q.x3).value,
            g.jet_at(q.x4).value};
    BigFloat dist_fg = cross_ratio_distortion(q, fg).value;
    BigFloat dist_g = cross_ratio_distortion(q, g).value;
    BigFloat dist_f = cross_ratio_distortion(gq, f).value;

    return MultiplicativityResiduals{abs(d_fg - d_g * d_f), abs(dist_fg - dist_g * dist_f)};
}

ExpansionResidual dr_expansion_residual(const BigFloat& x1, const BigFloat& x2,
                                        const BigFloat& x3, const SmoothMap& f) {
    if (x1 == x3) {
        // (D-1)/(x1-x3) is 0/0 here; report the general-center comparison
        // against the only remaining distinct point instead
        ExpansionResidual r = lemma1_theta_form(x1, x2, x3, x2, f);
        r.theta_form = true;
        return r;
    }
    BigFloat d = ratio_distortion(x1, x2, x3, f).value;
    Jet j1 = f.jet_at(x1);
    BigFloat actual = (d - 1L) / (x1 - x3);
    BigFloat predicted = j1.d2 / (2L * j1.d1) + schwarzian(j1) / 6L * (x2 + x3 - 2L * x1);
    return ExpansionResidual{hull_max(x1, x2, x3) - hull_min(x1, x2, x3), predicted, actual,
                             actual - predicted, false};
}

ExpansionResidual lemma1_theta_form(const BigFloat& x1, const BigFloat& x2, const BigFloat& x3,
                                    const BigFloat& theta, const SmoothMap& f) {
    BigFloat lo = hull_min(x1, x2, x3), hi = hull_max(x1, x2, x3);
    if (theta < lo || theta > hi)
        throw DomainError("lemma1_theta_form: theta lies outside the hull of the points");
    Jet jt = f.jet_at(theta);
    Jet j1 = f.jet_at(x1);
    BigFloat bt = jt.d2 / (2L * jt.d1);
    BigFloat theta_expr = bt + jt.d3 / (6L * jt.d1) * (x1 + x2 + x3 - 3L * theta) -
                          bt * bt * (x2 + x3 - 2L * theta);
    BigFloat x1_expr = j1.d2 / (2L * j1.d1) + schwarzian(j1) / 6L * (x2 + x3 - 2L * x1);
    return ExpansionResidual{hi - lo, x1_expr, theta_expr, theta_expr - x1_expr, false};
}

BigFloat exact_relation_check(const BigFloat& x1, const BigFloat& x2, const BigFloat& x3,
                              const SmoothMap& f) {
    if (x2 == x3) throw DomainError("exact_relation_check: x2 = x3 makes the prefactor singular");
    BigFloat d123 = ratio_distortion(x1, x2, x3, f).value;
    BigFloat d213 = ratio_distortion(x2, x1, x3, f).value;
    BigFloat d132 = ratio_distortion(x1, x3, x2, f).value;
    BigFloat rhs = 1L + (x1 - x3) / (x2 - x3) * (d213 - 1L) * d132;
    return abs(d123 - rhs);
}

ExpansionResidual dist_expansion_residual(const Quad& q, const BigFloat& theta,
                                          const SmoothMap& f) {
    BigFloat lo = min(hull_min(q.x1, q.x2, q.x3), q.x4);
    BigFloat hi = max(hull_max(q.x1, q.x2, q.x3), q.x4);
    if (theta < lo || theta > hi)
        throw DomainError("dist_expansion_residual: theta lies outside the hull of the quad");
    BigFloat dist = cross_ratio_distortion(q, f).value;
    if (q.x1 == q.x3) {
        // Dist(x1,x2,x1,x4) is identically 1: report the direct deviation
        BigFloat dev = dist - 1L;
        return ExpansionResidual{hi - lo, BigFloat(0L, dev.precision()), dev, dev, true};
    }
    BigFloat actual = log(dist) / (q.x1 - q.x3);
    BigFloat predicted = schwarzian_at(f, theta) / 6L * (q.x2 - q.x4);
    return ExpansionResidual{hi - lo, predicted, actual, actual - predicted, false};
}

namespace {

// 8 logarithmically spaced probe scales per decade
std::vector<double> delta_grid(double lo, double hi) {
    if (!(lo > 0) || !(hi >= lo))
        throw DomainError("expansion sweep: need 0 < delta_lo <= delta_hi");
    std::vector<double> g;
    for (long j = 0;; ++j) {
        double d = lo * std::pow(10.0, static_cast<double>(j) / 8.0);
        if (d > hi * (1 + 1e-9)) break;
        g.push_back(d);
    }
    return g;
}

}  // namespace

Sweep dr_expansion_sweep(const SmoothMap& f, const BigFloat& xi, double delta_lo,
                         double delta_hi, const PrecisionContext& ctx) {
    Sweep out;
    for (double d : delta_grid(delta_lo, delta_hi)) {
        BigFloat delta = ctx.of(d);
        ExpansionResidual r = dr_expansion_residual(xi, xi + delta / 2L, xi + delta, f);
        out.push_back(SweepPoint{delta, r.actual, r.predicted, r.residual});
    }
    return out;
}

Sweep dist_expansion_sweep(const SmoothMap& f, const BigFloat& xi, double delta_lo,
                           double delta_hi, const PrecisionContext& ctx) {
    Sweep out;
    for (double d : delta_grid(delta_lo, delta_hi)) {
        BigFloat delta = ctx.of(d);
        Quad q{xi, xi + delta / 3L, xi + delta, xi + 2L * delta / 3L};
        // center at x2, not the window midpoint: x2 and x4 sit symmetrically
        // about the midpoint, where the second-order error cancels and the
        // probes would report the next order instead of the generic one
        ExpansionResidual r = dist_expansion_residual(q, q.x2, f);
        out.push_back(SweepPoint{delta, r.actual, r.predicted, r.residual});
    }
    return out;
}

ScaleFitReport fit_sweep_slope(const Sweep& sweep) {
    std::vector<std::pair<BigFloat, BigFloat>> pts;
    pts.reserve(sweep.size());
    for (const SweepPoint& p : sweep) pts.emplace_back(p.delta, p.residual);
    return log_slope_fit(pts);
}

void write_sweep_csv(const Sweep& sweep, std::ostream& os) {
    os << "delta,actual,predicted,residual\n";
    for (const SweepPoint& p : sweep)
        os << p.delta.to_decimal(20) << "," << p.actual.to_decimal(20) << ","
           << p.predicted.to_decimal(20) << "," << p.residual.to_decimal(20) << "\n";
}

}  // namespace circlelab::crossratio
