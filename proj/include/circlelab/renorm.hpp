#pragma once

#include <memory>
#include <ostream>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "circlelab/bigfloat.hpp"
#include "circlelab/circlemap.hpp"
#include "circlelab/conjugacy.hpp"
#include "circlelab/fitting.hpp"
#include "circlelab/rotnum.hpp"

namespace circlelab::renorm {

// Level-n dynamical partition of the circle by a marked orbit: q_n long
// segments (level n-1 arcs) and q_{n-1} short segments (level n arcs) whose
// endpoints are the first q_n + q_{n-1} orbit points. Construction verifies
// the combinatorics — alternating order of the closest returns, the successor
// law, and the covering — and fails loudly when the map's rotation number
// does not match the continued fraction at this depth.
struct DynamicalPartition {
    long level = 0;  // n >= 1
    std::shared_ptr<const circlemap::OrbitCache> orbit;
    long q_cur = 0;   // q_n, number of long segments
    long q_prev = 0;  // q_{n-1}, number of short segments
    // |Delta_i^{(n-1)}| for i < q_n and |Delta_i^{(n)}| for i < q_{n-1}, as
    // positive arc lengths; entry 0 of each is the base segment at xi_0.
    std::vector<BigFloat> long_lengths;
    std::vector<BigFloat> short_lengths;
    // +1 when the successor walk runs counterclockwise (even n), -1 clockwise.
    int direction = 0;

    long points() const { return q_cur + q_prev; }
    const BigFloat& point(long i) const { return (*orbit)[i]; }
    // The successor map on orbit indices: i + q_n below q_{n-1}, i - q_{n-1}
    // above; always the circular neighbor of xi_i (verified at construction).
    long successor(long i) const;
};

DynamicalPartition build_partition(std::shared_ptr<const circlemap::OrbitCache> orbit,
                                   const rotnum::ContinuedFraction& cf, long n,
                                   const PrecisionContext& ctx);

// Convenience form: iterates its own orbit (marked point 0, guard precision,
// q_n + q_{n-1} + 1 points so the distortion functions below can use it too).
DynamicalPartition build_partition(const circlemap::CircleMapSpec& map,
                                   const rotnum::ContinuedFraction& cf, long n,
                                   const PrecisionContext& ctx);

struct DenjoyLevel {
    long level;        // n
    mpz_class q;       // q_n
    BigFloat gap;      // Delta_n from the continued fraction
    BigFloat sup_dev;  // max over samples of |(T^{q_n})'(xi) - 1|
    BigFloat max_len;  // l_n: max over samples of the arc (xi, T^{q_n} xi)
};

struct DenjoyReport {
    std::vector<DenjoyLevel> per_level;  // n = 0..n_max
    // Every sampled deviation was exactly zero (rigid rotation): the decay
    // exponent is unbounded and no fit is possible.
    bool deviation_vanishes = false;
    ScaleFitReport fitted_nu;  // log sup_dev against log Delta_n, levels >= 3
};

// Scans sample_count equispaced points; (T^{q_n})' is the exact chain-rule
// product of first-derivative jets along each sample's orbit, with all levels
// read off one pass as prefix products.
DenjoyReport denjoy_scan(const circlemap::CircleMapSpec& map, const rotnum::ContinuedFraction& cf,
                         long n_max, long sample_count, const PrecisionContext& ctx);

// Weighted gap sum over levels: sum_{k=0..n} (Delta_n / Delta_{n-k}) *
// Delta_{n-k-1}^sigma, with Delta_{-1} = 1.
BigFloat e_n_sigma(const rotnum::GapSequence& gaps, long n, const BigFloat& sigma);

// Same shape over measured segment lengths: sum_{k=0..n} (l_n / l_{n-k}) *
// l_{n-k-1}^alpha with l_{-1} = 1; lengths[m] = l_m for m = 0..n.
BigFloat epsilon_n_alpha(const std::vector<BigFloat>& lengths, long n, const BigFloat& alpha);

// The two renormalization distortion functions at level n, sampled over their
// base segments (Chebyshev nodes plus both endpoints), via the three-point
// ratio distortion of the iterated lift:
//   M_n(xi) = D(xi_0, xi, xi_{q_{n-1}}; T^{q_n})   on Delta_0^{(n-1)},
//   K_n(xi) = D(xi_0, xi, xi_{q_n}; T^{q_{n-1}})   on Delta_0^{(n-2)}.
// Sample abscissae are stored in the chart that unrolls the circle around
// xi_0, so they can be fed straight back into lift-coordinate maps.
struct MKFunctions {
    long level = 0;  // n >= 3
    std::vector<std::pair<BigFloat, BigFloat>> m_samples;
    std::vector<std::pair<BigFloat, BigFloat>> k_samples;
    BigFloat m_n;  // sqrt(M_n(xi_0) M_n(xi_{q_{n-1}})), the positive root
    // |M_n(xi_0) M_n(xi_{q_{n-1}}) - K_n(xi_0) K_n(xi_{q_n})|: the endpoint
    // products agree identically, so this is a rounding-level self-check.
    BigFloat endpoint_product_residual;
};

MKFunctions mk_functions(const circlemap::CircleMapSpec& map, const DynamicalPartition& part,
                         long sample_count, const PrecisionContext& ctx);

// The three exact relations between consecutive-level distortion functions,
// evaluated from one shared orbit. Residuals are absolute two-side
// differences; each scale is 1 + |lhs| + |rhs| (the computations run through
// unit-sized distortion values, which set the rounding budget).
struct IdentityResiduals {
    long level = 0;  // n: uses partitions n-1, n, n+1
    BigFloat observ1, observ2, observ3;
    BigFloat observ1_scale, observ2_scale, observ3_scale;
};

IdentityResiduals exact_identities_check(const circlemap::CircleMapSpec& map,
                                         const DynamicalPartition& below,
                                         const DynamicalPartition& mid,
                                         const DynamicalPartition& above,
                                         const PrecisionContext& ctx);

// Schwarzian orbit sums at level n with density weights:
//   p_sum    = sum_{i<q_n}     ST(xi_i)/h(xi_i) * (xi_i - xi_{i+q_{n-1}}),
//   pbar_sum = sum_{i<q_{n-1}} ST(xi_{i+q_n})/h(xi_{i+q_n}) * (xi_{i+q_n} - xi_i).
// two_path_residual compares p_sum + pbar_sum against the same terms summed
// in successor order around Xi_n — an exact reindexing, so it stays at
// summation-rounding level (64*eps*(term count)).
struct SchwarzSums {
    long level = 0;
    BigFloat p_sum;
    BigFloat pbar_sum;
    BigFloat two_path_residual;
    BigFloat term_magnitude;  // sum of |term| over Xi_n, for diagnostics
};

SchwarzSums schwarz_sums(const circlemap::CircleMapSpec& map, const DynamicalPartition& part,
                         const conjugacy::DensityEstimate& density, const PrecisionContext& ctx);

// Spot-check of the first-return structure: sampled points of the long base
// segment must land in (long base) union (short base) under T^{q_n}. Returns
// the number of violations (0 for a correctly tuned map).
long first_return_violations(const circlemap::CircleMapSpec& map, const DynamicalPartition& part,
                             long sample_count, const PrecisionContext& ctx);

// One row of the per-level report.
struct LevelSummary {
    long level;
    mpz_class q;
    BigFloat gap;       // Delta_n
    BigFloat sup_dev;   // from the Denjoy scan
    BigFloat e1;        // E_{n,1}
    BigFloat eps1;      // epsilon_{n,1} over measured lengths
    BigFloat p_sum, pbar_sum;
    BigFloat observ1_res, observ2_res, observ3_res;
};

struct LevelSurvey {
    std::vector<LevelSummary> rows;  // levels n_lo..n_hi
    bool deviation_vanishes = false;
    ScaleFitReport denjoy_nu;  // log sup_dev against log Delta_n, levels >= 3
    ScaleFitReport p_decay;    // log |p_n| against log Delta_{n-1}, levels >= 4
};

// Runs the whole per-level pipeline on one shared orbit: Denjoy scan,
// partitions with their identity checks, Schwarzian sums against a density
// estimated from the same orbit (density_depth samples, at least the deepest
// partition's point count).
LevelSurvey survey_levels(const circlemap::CircleMapSpec& map, const rotnum::ContinuedFraction& cf,
                          long n_lo, long n_hi, long sample_count, long density_depth,
                          const PrecisionContext& ctx);

// CSV export, one row per level:
// n,q_n,delta_n,sup_dev,e_n_1,eps_n_1,p_sum,pbar_sum,observ1_res,observ2_res,observ3_res
void write_level_csv(const LevelSurvey& survey, std::ostream& os);

}  // namespace circlelab::renorm
