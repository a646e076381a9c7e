#pragma once

#include <ostream>
#include <vector>

#include "circlelab/bigfloat.hpp"
#include "circlelab/fitting.hpp"
#include "circlelab/smooth_map.hpp"

namespace circlelab::crossratio {

// Four points of a common interval. Pure cross-ratio needs them pairwise
// distinct; the distortion operations tolerate coincidences with exact
// limit semantics (difference quotients replaced by derivatives).
struct Quad {
    BigFloat x1, x2, x3, x4;
};

// Coincidence flags, named by the argument pair whose difference quotient
// degenerated and was replaced by a derivative.
enum Coincidence : unsigned {
    kNoCoincidence = 0u,
    kX1X2 = 1u << 0,
    kX2X3 = 1u << 1,
    kX1X4 = 1u << 2,
    kX4X3 = 1u << 3,
};

struct DistortionValue {
    BigFloat value;
    unsigned coincidence_mask = kNoCoincidence;
};

// Cr(q) = ((x1-x2)(x3-x4)) / ((x2-x3)(x4-x1)). Requires pairwise distinct
// points; throws DomainError otherwise (this operation has no limit form).
BigFloat cross_ratio(const Quad& q);

// D(x1,x2,x3; f): the ratio of the difference quotients over (x1,x2) and
// (x2,x3). A coincident pair contributes f' at the common point instead.
DistortionValue ratio_distortion(const BigFloat& x1, const BigFloat& x2, const BigFloat& x3,
                                 const SmoothMap& f);

// Dist(q; f) = D(x1,x2,x3; f) / D(x1,x4,x3; f); for pairwise distinct points
// this equals Cr(f(q)) / Cr(q).
DistortionValue cross_ratio_distortion(const Quad& q, const SmoothMap& f);

// Residuals of the composition laws
//   D(q; f o g)    = D(q; g)    * D(g(q); f)
//   Dist(q; f o g) = Dist(q; g) * Dist(g(q); f)
// as absolute differences between the two sides.
struct MultiplicativityResiduals {
    BigFloat ratio_law;
    BigFloat cross_ratio_law;
};
MultiplicativityResiduals check_multiplicativity(const Quad& q, const SmoothMap& f,
                                                 const SmoothMap& g);

// One probe of a small-scale distortion expansion: `actual` is the measured
// normalized quantity, `predicted` the second-order model at the same
// points, `residual` their difference. quad_scale is the spread (max - min)
// of every point entering the probe. theta_form marks probes that had to
// fall back to the general expansion center because the normalization
// x1 - x3 degenerated.
struct ExpansionResidual {
    BigFloat quad_scale;
    BigFloat predicted;
    BigFloat actual;
    BigFloat residual;
    bool theta_form = false;
};

// (D(x1,x2,x3;f) - 1)/(x1-x3) against the model
//   f''(x1)/2f'(x1) + (1/6) Sf(x1) (x2+x3-2x1).
// The residual decays like Delta^(1+beta) for a C^(3+beta) map. When
// x1 = x3 the normalization is 0/0 and the probe switches to the general
// expansion centered at x2 (theta_form set).
ExpansionResidual dr_expansion_residual(const BigFloat& x1, const BigFloat& x2,
                                        const BigFloat& x3, const SmoothMap& f);

// Difference between the expansion coefficient centered at an arbitrary
// theta inside the hull,
//   f''(t)/2f'(t) + f'''(t)/6f'(t) (x1+x2+x3-3t) - (f''(t)/2f'(t))^2 (x2+x3-2t),
// and the same coefficient centered at x1. The two agree exactly at
// theta = x1 and differ by O(Delta^(1+beta)) in general.
ExpansionResidual lemma1_theta_form(const BigFloat& x1, const BigFloat& x2, const BigFloat& x3,
                                    const BigFloat& theta, const SmoothMap& f);

// |D(x1,x2,x3;f) - (1 + ((x1-x3)/(x2-x3)) (D(x2,x1,x3;f) - 1) D(x1,x3,x2;f))|.
// This relation is exact, so the residual is pure rounding noise. Throws
// DomainError when x2 = x3.
BigFloat exact_relation_check(const BigFloat& x1, const BigFloat& x2, const BigFloat& x3,
                              const SmoothMap& f);

// log Dist(q;f)/(x1-x3) against (1/6)(x2-x4) Sf(theta) for theta in the hull
// of the quad. When x1 = x3 the probe degenerates (Dist is identically 1);
// it then reports Dist - 1 directly with theta_form set.
ExpansionResidual dist_expansion_residual(const Quad& q, const BigFloat& theta,
                                          const SmoothMap& f);

// One row of a scale sweep.
struct SweepPoint {
    BigFloat delta;
    BigFloat actual;
    BigFloat predicted;
    BigFloat residual;
};
using Sweep = std::vector<SweepPoint>;

// Geometric Delta grids with 8 points per decade over [delta_lo, delta_hi].
// dr probes use the triple (xi, xi+Delta/2, xi+Delta); dist probes the quad
// (xi, xi+Delta/3, xi+Delta, xi+2Delta/3) centered at x2. (The window
// midpoint is equidistant from x2 and x4 and superconverges; x2 exhibits
// the generic second-order rate.)
Sweep dr_expansion_sweep(const SmoothMap& f, const BigFloat& xi, double delta_lo,
                         double delta_hi, const PrecisionContext& ctx);
Sweep dist_expansion_sweep(const SmoothMap& f, const BigFloat& xi, double delta_lo,
                           double delta_hi, const PrecisionContext& ctx);

// Decay exponent of |residual| against delta (log-log least squares).
ScaleFitReport fit_sweep_slope(const Sweep& sweep);

// CSV rows "delta,actual,predicted,residual" with a header line.
void write_sweep_csv(const Sweep& sweep, std::ostream& os);

}  // namespace circlelab::crossratio
