#pragma once

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "circlelab/bigfloat.hpp"
#include "circlelab/circlemap.hpp"
#include "circlelab/fitting.hpp"

namespace circlelab::conjugacy {

// The conjugacy phi with phi(T(xi)) = phi(xi) + rho (mod 1) is known exactly
// on a marked orbit: phi(xi_i) = {i rho} once normalized to phi(xi_0) = 0.
// No functional equation is ever solved; everything downstream (density,
// regularity) is built from these exact samples.
struct ConjugacySamples {
    // (xi_i, phi(xi_i)) sorted by the first coordinate
    std::vector<std::pair<BigFloat, BigFloat>> pairs;
    long depth = 0;  // orbit length N
};

// Pairs the orbit with the rigid-rotation orbit of 0 and verifies that both
// traverse the circle in the same cyclic order (one descent in the phi column
// when scanned in xi order). A mismatch means rho is not the map's rotation
// number at this combinatorial depth and raises CombinatoricsError.
ConjugacySamples conjugacy_samples(const circlemap::OrbitCache& orbit, const BigFloat& rho);

// Invariant density h = phi' approximated by forward divided differences of
// the exact conjugacy samples over circle-adjacent gaps; one value per gap,
// attached to the gap midpoint. Positive by construction: both the xi gap and
// the phi gap are forward arcs.
struct DensityEstimate {
    std::vector<BigFloat> at;        // gap midpoints, sorted, in [0,1)
    std::vector<BigFloat> h_values;  // same length as at, all > 0
    std::string scheme;
    // Gap-weighted mean of h = total phi mass / total xi mass; equals 1 up to
    // rounding because both gap systems telescope around the circle.
    BigFloat weighted_mean;

    // Value at the sample midpoint nearest to x (circular distance).
    const BigFloat& value_near(const BigFloat& x) const;
};

DensityEstimate density_estimate(const ConjugacySamples& samples);

// Max over the sample midpoints of |h(xi) - T'(xi) h(T xi)|, the residual of
// the invariance equation for the density; h at the image point is looked up
// by nearest-sample interpolation. Zero for exact h, discretization-sized for
// divided-difference h.
BigFloat homologic_residual(const circlemap::CircleMapSpec& map, const DensityEstimate& density,
                            const PrecisionContext& ctx);

// Above this fitted slope the data is indistinguishable from Lipschitz at the
// scales we can resolve, and the estimate is reported as capped.
inline constexpr double kLipschitzCap = 0.95;

struct RegularityEstimate {
    BigFloat exponent;  // fitted slope clamped to [0,1]
    BigFloat scale_min, scale_max;
    ScaleFitReport fit;  // log10 sup-difference against log10 scale
    bool cap_hit = false;
};

// Empirical Hoelder exponent of scattered values v(x), x in [0,1): for each
// dyadic scale bucket (s/2, s] within [scale_min, scale_max], take the sup of
// |v(x) - v(y)| over pairs at plain distance |x - y| in the bucket, then
// regress log sup against log s. Distances are not wrapped so that
// non-periodic data (v(x) = x) fits cleanly.
RegularityEstimate holder_exponent(const std::vector<std::pair<BigFloat, BigFloat>>& values,
                                   const BigFloat& scale_min, const BigFloat& scale_max);

// Default scale window 8*(median gap) .. 1/8: below ~8 gaps the
// divided-difference noise dominates, above 1/8 periodicity bends the curve.
std::pair<BigFloat, BigFloat> default_holder_scales(
    const std::vector<std::pair<BigFloat, BigFloat>>& values);

// The finite induction sigma_0 = 1, sigma_{i+1} = min{1+beta, 2 sigma_i /
// (1+delta)}, carried out in exact rational arithmetic until it reaches its
// fixed point 1+beta.
struct ExponentSchedule {
    mpq_class beta, delta;
    std::vector<mpq_class> sigmas;  // sigma_0 = 1 first, 1+beta last
    long steps_to_fixpoint = 0;
};

// Runs the recurrence and cross-checks each step against the closed form
// sigma_i = min{1+beta, (2/(1+delta))^i} and against the three-way rule
// min{1+beta, 1+sigma_i-delta, 2 sigma_i/(1+delta)}, whose middle entry is
// provably never the minimum while sigma_i < 1+delta. Requires
// 0 < beta < delta < 1.
ExponentSchedule exponent_schedule(const mpq_class& beta, const mpq_class& delta);

struct RegularityPrediction {
    mpq_class conjugacy_exponent;  // r - 1 - delta
    mpq_class density_exponent;    // r - 2 - delta
};

// Smoothness bookkeeping for a C^r map with delta-Diophantine rotation
// number; defined on the open strip 2 + delta < r < 3 + delta, 0 < delta < 1.
RegularityPrediction predicted_regularity(const mpq_class& r, const mpq_class& delta);

}  // namespace circlelab::conjugacy
