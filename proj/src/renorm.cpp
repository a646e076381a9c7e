#include "circlelab/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>

#include "circlelab/crossratio.hpp"
#include "circlelab/errors.hpp"

namespace circlelab::renorm {

namespace {

long q_as_long(const rotnum::ContinuedFraction& cf, long n) {
    const mpz_class& q = cf.q(n);
    if (!q.fits_slong_p())
        throw ResourceError("convergent denominator q_" + std::to_string(n) +
                            " does not fit a machine index");
    return q.get_si();
}

std::string short_decimal(const BigFloat& x) { return x.to_decimal(8); }

// Positive arc length from x to y walking in the given direction.
BigFloat directed_arc(const BigFloat& x, const BigFloat& y, int direction) {
    return direction > 0 ? wrap_unit(y - x) : wrap_unit(x - y);
}

}  // namespace

long DynamicalPartition::successor(long i) const {
    if (i < 0 || i >= points())
        throw DomainError("partition successor index " + std::to_string(i) + " out of range");
    return i < q_prev ? i + q_cur : i - q_prev;
}

DynamicalPartition build_partition(std::shared_ptr<const circlemap::OrbitCache> orbit,
                                   const rotnum::ContinuedFraction& cf, long n,
                                   const PrecisionContext& ctx) {
    if (n < 1) throw DomainError("build_partition: level must be >= 1, got " + std::to_string(n));
    if (cf.depth() < n)
        throw DomainError("build_partition: continued fraction depth " +
                          std::to_string(cf.depth()) + " < level " + std::to_string(n));
    if (!orbit) throw DomainError("build_partition: null orbit");

    DynamicalPartition part;
    part.level = n;
    part.orbit = std::move(orbit);
    part.q_cur = q_as_long(cf, n);
    part.q_prev = q_as_long(cf, n - 1);
    part.direction = (n % 2 == 0) ? +1 : -1;
    const long m = part.points();
    if (part.orbit->size() < m)
        throw DomainError("build_partition: orbit has " + std::to_string(part.orbit->size()) +
                          " points, level " + std::to_string(n) + " needs " + std::to_string(m));
    const auto& pt = [&](long i) -> const BigFloat& { return (*part.orbit)[i]; };

    // Closest-return points alternate sides of the marked point and approach
    // it monotonically within each parity class. The directed gap from xi_0
    // to xi_{q_m} (counterclockwise for even m, clockwise for odd) must be
    // positive and strictly shrink in steps of two.
    std::vector<BigFloat> side_gap(static_cast<size_t>(n) + 1);
    for (long mm = 0; mm <= n; ++mm) {
        const long qm = q_as_long(cf, mm);
        const int side = (mm % 2 == 0) ? +1 : -1;
        side_gap[static_cast<size_t>(mm)] = directed_arc(pt(0), pt(qm), side);
        if (side_gap[static_cast<size_t>(mm)].is_zero())
            throw PeriodicOrbitError(qm, static_cast<long>(cf.p(mm).get_si()));
        if (mm >= 2 && !(side_gap[static_cast<size_t>(mm)] < side_gap[static_cast<size_t>(mm - 2)]))
            throw CombinatoricsError(
                "closest returns out of order: xi_" + std::to_string(q_as_long(cf, mm - 2)) +
                " should lie strictly between xi_0 and xi_" + std::to_string(qm) +
                " (level " + std::to_string(mm) + ", gaps " +
                short_decimal(side_gap[static_cast<size_t>(mm - 2)]) + " vs " +
                short_decimal(side_gap[static_cast<size_t>(mm)]) + ")");
    }

    // The successor map i -> i+q_n (or i-q_{n-1}) must walk the circular
    // order of the first m orbit points, one neighbor per step, in the
    // parity-determined direction. Sorting the points makes the circular
    // order explicit; any mismatch names the first offending triple.
    std::vector<long> order(static_cast<size_t>(m));
    std::iota(order.begin(), order.end(), 0L);
    std::sort(order.begin(), order.end(), [&](long a, long b) { return pt(a) < pt(b); });
    std::vector<long> rank(static_cast<size_t>(m));
    for (long k = 0; k < m; ++k) {
        if (k > 0 && !(pt(order[static_cast<size_t>(k - 1)]) < pt(order[static_cast<size_t>(k)]))) {
            const long a = order[static_cast<size_t>(k - 1)];
            const long b = order[static_cast<size_t>(k)];
            throw PeriodicOrbitError(std::labs(b - a), 0);
        }
        rank[static_cast<size_t>(order[static_cast<size_t>(k)])] = k;
    }

    part.long_lengths.resize(static_cast<size_t>(part.q_cur));
    part.short_lengths.resize(static_cast<size_t>(part.q_prev));
    BigFloat covered(0L, part.orbit->prec);
    for (long i = 0; i < m; ++i) {
        const long succ = part.successor(i);
        const long k = rank[static_cast<size_t>(i)];
        const long k_next = (k + part.direction + m) % m;
        const long neighbor = order[static_cast<size_t>(k_next)];
        if (neighbor != succ)
            throw CombinatoricsError(
                "successor law fails at xi_" + std::to_string(i) + ": the circular neighbor is xi_" +
                std::to_string(neighbor) + " but the index map gives xi_" + std::to_string(succ) +
                " (level " + std::to_string(n) + ")");
        BigFloat len = directed_arc(pt(i), pt(succ), part.direction);
        covered = covered + len;
        if (i < part.q_prev)
            part.short_lengths[static_cast<size_t>(i)] = std::move(len);
        else
            part.long_lengths[static_cast<size_t>(i - part.q_prev)] = std::move(len);
    }
    const BigFloat cover_err = abs(covered - 1L);
    if (cover_err > 64L * BigFloat(m, ctx.bits) * ctx.eps())
        throw VerificationError("partition segments fail to cover the circle: |total - 1| = " +
                                short_decimal(cover_err));
    return part;
}

DynamicalPartition build_partition(const circlemap::CircleMapSpec& map,
                                   const rotnum::ContinuedFraction& cf, long n,
                                   const PrecisionContext& ctx) {
    if (n < 1) throw DomainError("build_partition: level must be >= 1, got " + std::to_string(n));
    if (cf.depth() < n)
        throw DomainError("build_partition: continued fraction depth " +
                          std::to_string(cf.depth()) + " < level " + std::to_string(n));
    const PrecisionContext wide = ctx.guard();
    const long need = q_as_long(cf, n) + q_as_long(cf, n - 1) + 1;
    auto orbit = std::make_shared<circlemap::OrbitCache>(
        circlemap::iterate_orbit(map, wide.zero(), need, wide));
    return build_partition(std::move(orbit), cf, n, ctx);
}

DenjoyReport denjoy_scan(const circlemap::CircleMapSpec& map, const rotnum::ContinuedFraction& cf,
                         long n_max, long sample_count, const PrecisionContext& ctx) {
    if (n_max < 0) throw DomainError("denjoy_scan: n_max must be >= 0");
    if (sample_count < 1) throw DomainError("denjoy_scan: need at least one sample");
    const rotnum::GapSequence gaps = rotnum::gap_sequence(cf, ctx);
    if (gaps.max_level() < n_max)
        throw DomainError("denjoy_scan: continued fraction too shallow for level " +
                          std::to_string(n_max));
    std::vector<long> qs(static_cast<size_t>(n_max) + 1);
    for (long n = 0; n <= n_max; ++n) qs[static_cast<size_t>(n)] = q_as_long(cf, n);
    const long q_top = qs.back();
    if (q_top > circlemap::kDefaultOrbitBudget / sample_count)
        throw ResourceError("denjoy_scan: " + std::to_string(sample_count) + " orbits of " +
                            std::to_string(q_top) + " steps exceed the iteration budget");

    const PrecisionContext wide = ctx.guard();
    DenjoyReport report;
    report.per_level.reserve(static_cast<size_t>(n_max) + 1);
    for (long n = 0; n <= n_max; ++n)
        report.per_level.push_back(DenjoyLevel{n, cf.q(n), ctx.round(gaps.delta(n)),
                                               wide.zero(), wide.zero()});

    for (long j = 0; j < sample_count; ++j) {
        const BigFloat xi0 = BigFloat(j, wide.bits) / BigFloat(sample_count, wide.bits);
        BigFloat x = xi0;
        BigFloat deriv(1L, wide.bits);
        size_t level = 0;
        for (long k = 1; k <= q_top; ++k) {
            const circlemap::JetValue jet = circlemap::eval_jet(map, x, wide);
            deriv = deriv * jet.f1;
            x = jet.f;
            while (level < qs.size() && qs[level] == k) {
                DenjoyLevel& row = report.per_level[level];
                const BigFloat dev = abs(deriv - 1L);
                if (row.sup_dev < dev) row.sup_dev = dev;
                // length of the fundamental segment at this sample: the arc
                // from xi to its return, walked counterclockwise on even
                // levels and clockwise on odd ones
                const BigFloat len =
                    (level % 2 == 0) ? wrap_unit(x - xi0) : wrap_unit(xi0 - x);
                if (row.max_len < len) row.max_len = len;
                ++level;
            }
        }
    }

    // Return-time arcs must contract as the level grows; a stall means the
    // rotation number stopped matching the continued fraction.
    for (long n = 1; n <= n_max; ++n) {
        const auto& prev = report.per_level[static_cast<size_t>(n - 1)];
        const auto& cur = report.per_level[static_cast<size_t>(n)];
        if (!(cur.max_len < prev.max_len))
            throw CombinatoricsError("return arcs fail to contract from level " +
                                     std::to_string(n - 1) + " (" + short_decimal(prev.max_len) +
                                     ") to level " + std::to_string(n) + " (" +
                                     short_decimal(cur.max_len) + ")");
    }

    report.deviation_vanishes = true;
    std::vector<std::pair<BigFloat, BigFloat>> fit_pts;
    for (const DenjoyLevel& row : report.per_level) {
        if (!row.sup_dev.is_zero()) report.deviation_vanishes = false;
        if (row.level >= 3 && !row.sup_dev.is_zero())
            fit_pts.push_back({row.gap, row.sup_dev});
    }
    if (fit_pts.size() >= 2) report.fitted_nu = log_slope_fit(fit_pts);
    return report;
}

BigFloat e_n_sigma(const rotnum::GapSequence& gaps, long n, const BigFloat& sigma) {
    if (n < 0) throw DomainError("e_n_sigma: level must be >= 0");
    if (gaps.max_level() < n)
        throw DomainError("e_n_sigma: gap sequence too shallow for level " + std::to_string(n));
    const mpfr_prec_t prec = gaps.delta(n).precision();
    BigFloat sum(0L, prec);
    for (long k = 0; k <= n; ++k)
        sum = sum + (gaps.delta(n) / gaps.delta(n - k)) * pow(gaps.delta(n - k - 1), sigma);
    return sum;
}

BigFloat epsilon_n_alpha(const std::vector<BigFloat>& lengths, long n, const BigFloat& alpha) {
    if (n < 0) throw DomainError("epsilon_n_alpha: level must be >= 0");
    if (static_cast<long>(lengths.size()) < n + 1)
        throw DomainError("epsilon_n_alpha: need lengths l_0..l_" + std::to_string(n) + ", got " +
                          std::to_string(lengths.size()));
    for (long m = 0; m <= n; ++m)
        if (!(lengths[static_cast<size_t>(m)] > 0L))
            throw DomainError("epsilon_n_alpha: length l_" + std::to_string(m) +
                              " is not positive");
    const mpfr_prec_t prec = lengths[static_cast<size_t>(n)].precision();
    const BigFloat one(1L, prec);
    auto l = [&](long m) -> const BigFloat& {
        return m < 0 ? one : lengths[static_cast<size_t>(m)];
    };
    BigFloat sum(0L, prec);
    for (long k = 0; k <= n; ++k)
        sum = sum + (l(n) / l(n - k)) * pow(l(n - k - 1), alpha);
    return sum;
}

namespace {

// Chart around the marked point: represents nearby circle points as lift
// coordinates xi_0 + (signed arc), so that three-point distortions of the
// iterated lift can be evaluated without wrap seams. The shortest
// representative puts a point on its combinatorial side whenever its arc is
// under a half circle; measured level-1 arcs of strongly nonlinear maps can
// exceed that, which is why the identity checks below keep chart offsets
// signed instead of assuming sides.
struct MarkedChart {
    const DynamicalPartition& part;
    BigFloat origin;

    explicit MarkedChart(const DynamicalPartition& p) : part(p), origin(p.point(0)) {}
    BigFloat offset(long orbit_index) const {
        return signed_circle_diff(part.point(orbit_index), origin);
    }
    BigFloat at(long orbit_index) const { return origin + offset(orbit_index); }
};

BigFloat distortion_at(const BigFloat& x1, const BigFloat& x2, const BigFloat& x3,
                       const circlemap::IteratedLift& f) {
    return crossratio::ratio_distortion(x1, x2, x3, f).value;
}

}  // namespace

MKFunctions mk_functions(const circlemap::CircleMapSpec& map, const DynamicalPartition& part,
                         long sample_count, const PrecisionContext& ctx) {
    if (part.level < 3)
        throw DomainError("mk_functions: level must be >= 3 so both base segments are short arcs");
    if (sample_count < 1) throw DomainError("mk_functions: need at least one interior sample");

    const MarkedChart chart(part);
    const mpfr_prec_t prec = chart.origin.precision();
    const BigFloat u0 = chart.at(0);
    const BigFloat v = chart.at(part.q_prev);              // xi_{q_{n-1}}
    const BigFloat z = chart.at(part.q_cur);               // xi_{q_n}
    const BigFloat w2 = chart.at(part.q_cur - part.q_prev);  // xi_{q_{n-2}}
    const circlemap::IteratedLift f_cur(map, part.q_cur);
    const circlemap::IteratedLift f_prev(map, part.q_prev);

    // Interior Chebyshev nodes in (0,1) plus both endpoints; endpoint values
    // are the ones entering the cross-level relations.
    std::vector<BigFloat> ts;
    ts.reserve(static_cast<size_t>(sample_count) + 2);
    ts.push_back(BigFloat(0L, prec));
    const BigFloat pi = BigFloat::pi(prec);
    for (long j = sample_count - 1; j >= 0; --j)
        ts.push_back((1L - cos(pi * BigFloat(2 * j + 1, prec) / BigFloat(2 * sample_count, prec))) /
                     2L);
    ts.push_back(BigFloat(1L, prec));

    MKFunctions out;
    out.level = part.level;
    auto sample = [&](const BigFloat& end, const BigFloat& ref,
                      const circlemap::IteratedLift& f,
                      std::vector<std::pair<BigFloat, BigFloat>>& dst, const char* name) {
        dst.reserve(ts.size());
        for (const BigFloat& t : ts) {
            const BigFloat x = t.is_zero() ? u0 : (t == 1L ? end : u0 + t * (end - u0));
            BigFloat val = distortion_at(u0, x, ref, f);
            if (!(val > 0L))
                throw VerificationError(std::string(name) + " sample is not positive at offset " +
                                        short_decimal(x - u0) + " (level " +
                                        std::to_string(part.level) + ")");
            dst.push_back({x, std::move(val)});
        }
    };
    sample(v, v, f_cur, out.m_samples, "M_n");
    sample(w2, z, f_prev, out.k_samples, "K_n");

    const BigFloat m_prod = out.m_samples.front().second * out.m_samples.back().second;
    const BigFloat k_end = distortion_at(u0, z, z, f_prev);
    const BigFloat k_prod = out.k_samples.front().second * k_end;
    out.m_n = sqrt(m_prod);
    out.endpoint_product_residual = abs(m_prod - k_prod);
    const BigFloat tol = 64L * ctx.eps() * (1L + abs(m_prod) + abs(k_prod));
    if (out.endpoint_product_residual > tol)
        throw VerificationError("endpoint product identity fails at level " +
                                std::to_string(part.level) + ": residual " +
                                short_decimal(out.endpoint_product_residual));
    return out;
}

IdentityResiduals exact_identities_check(const circlemap::CircleMapSpec& map,
                                         const DynamicalPartition& below,
                                         const DynamicalPartition& mid,
                                         const DynamicalPartition& above,
                                         const PrecisionContext& ctx) {
    if (below.level + 1 != mid.level || mid.level + 1 != above.level)
        throw DomainError("exact_identities_check: levels must be consecutive, got " +
                          std::to_string(below.level) + "," + std::to_string(mid.level) + "," +
                          std::to_string(above.level));
    if (below.orbit != mid.orbit || mid.orbit != above.orbit)
        throw DomainError("exact_identities_check: partitions must share one orbit");
    const long n = mid.level;
    if (n < 2)
        throw DomainError("exact_identities_check: middle level must be >= 2");

    const MarkedChart chart(mid);
    const BigFloat u0 = chart.at(0);
    const BigFloat v = chart.at(mid.q_prev);    // xi_{q_{n-1}}
    const BigFloat z = chart.at(mid.q_cur);     // xi_{q_n}
    const BigFloat w = chart.at(above.q_cur);   // xi_{q_{n+1}}
    const circlemap::IteratedLift f_prev(map, mid.q_prev);
    const circlemap::IteratedLift f_cur(map, mid.q_cur);
    const circlemap::IteratedLift f_next(map, above.q_cur);

    IdentityResiduals out;
    out.level = n;
    const BigFloat one(1L, ctx.bits);
    auto check = [&](const char* name, const BigFloat& lhs, const BigFloat& rhs,
                     BigFloat& res, BigFloat& scale) {
        res = abs(lhs - rhs);
        scale = one + abs(lhs) + abs(rhs);
        if (res > 64L * ctx.eps() * scale)
            throw VerificationError(std::string(name) + " fails at level " + std::to_string(n) +
                                    ": residual " + short_decimal(res) + " vs sides " +
                                    short_decimal(lhs) + ", " + short_decimal(rhs));
    };

    // Endpoint products of the two distortion functions agree.
    check("endpoint product identity",
          distortion_at(u0, u0, v, f_cur) * distortion_at(u0, v, v, f_cur),
          distortion_at(u0, u0, z, f_prev) * distortion_at(u0, z, z, f_prev),
          out.observ1, out.observ1_scale);

    // The next-level K at xi_{q_{n-1}} reproduces M_n at xi_{q_{n+1}} scaled
    // by the ratio of signed chart offsets. Both returns sit on the same side
    // of the marked point, so the ratio is normally the plain length ratio;
    // the signed form also survives the level-2 edge case where a measured
    // level-1 arc exceeds a half circle and the chart wraps one endpoint.
    check("cross-level K/M relation",
          distortion_at(u0, v, w, f_cur) - 1L,
          ((w - u0) / (v - u0)) * (distortion_at(u0, w, v, f_cur) - 1L),
          out.observ2, out.observ2_scale);

    // Derivative-to-distortion comparison across one level; the two reference
    // points sit on opposite sides of the marked point, so the signed offset
    // ratio carries the orientation flip.
    const BigFloat d_next = f_next.jet_at(u0).d1;
    const BigFloat d_cur = f_cur.jet_at(u0).d1;
    check("derivative ratio relation",
          d_next / distortion_at(u0, u0, z, f_next) - 1L,
          ((w - u0) / (z - u0)) * (d_cur / distortion_at(u0, u0, w, f_cur) - 1L),
          out.observ3, out.observ3_scale);
    return out;
}

SchwarzSums schwarz_sums(const circlemap::CircleMapSpec& map, const DynamicalPartition& part,
                         const conjugacy::DensityEstimate& density, const PrecisionContext& ctx) {
    if (part.level < 2)
        throw DomainError("schwarz_sums: level must be >= 2 so every segment is a short arc");
    const long m = part.points();
    if (static_cast<long>(density.at.size()) < m)
        throw DomainError("schwarz_sums: density carries " + std::to_string(density.at.size()) +
                          " samples, not resolved at the partition scale (" + std::to_string(m) +
                          " points)");

    const PrecisionContext wide = ctx.guard();
    auto term_at = [&](long idx, long other) {
        const BigFloat& x = part.point(idx);
        return (circlemap::schwarzian(map, x, wide) / density.value_near(x)) *
               signed_circle_diff(x, part.point(other));
    };

    SchwarzSums out;
    out.level = part.level;
    out.p_sum = wide.zero();
    out.pbar_sum = wide.zero();
    for (long i = 0; i < part.q_cur; ++i) out.p_sum = out.p_sum + term_at(i, i + part.q_prev);
    for (long i = 0; i < part.q_prev; ++i)
        out.pbar_sum = out.pbar_sum + term_at(i + part.q_cur, i);

    // Same terms indexed by segment: each xi in Xi_n contributes through its
    // successor. Only the summation order differs, so the two paths agree to
    // summation roundoff.
    BigFloat by_segment = wide.zero();
    out.term_magnitude = wide.zero();
    for (long i = 0; i < m; ++i) {
        const BigFloat t = term_at(part.successor(i), i);
        out.term_magnitude = out.term_magnitude + abs(t);
        by_segment = by_segment + t;
    }
    out.two_path_residual = abs(out.p_sum + out.pbar_sum - by_segment);
    if (out.two_path_residual > 64L * BigFloat(m, ctx.bits) * ctx.eps())
        throw VerificationError("orbit-sum reindexing check fails at level " +
                                std::to_string(part.level) + ": residual " +
                                short_decimal(out.two_path_residual));
    return out;
}

long first_return_violations(const circlemap::CircleMapSpec& map, const DynamicalPartition& part,
                             long sample_count, const PrecisionContext& ctx) {
    if (sample_count < 1) throw DomainError("first_return_violations: need at least one sample");
    const MarkedChart chart(part);
    const BigFloat dv = chart.offset(part.q_prev);
    const BigFloat dz = chart.offset(part.q_cur);
    const BigFloat lo = min(dv, dz);
    const BigFloat hi = max(dv, dz);
    const BigFloat slack = 64L * ctx.eps();
    long violations = 0;
    for (long j = 1; j <= sample_count; ++j) {
        const BigFloat t = BigFloat(j, chart.origin.precision()) / BigFloat(sample_count + 1, 64);
        BigFloat y = wrap_unit(chart.origin + t * dv);
        for (long k = 0; k < part.q_cur; ++k) y = map.apply(y);
        const BigFloat s = signed_circle_diff(y, chart.origin);
        if (s < lo - slack || s > hi + slack) ++violations;
    }
    return violations;
}

LevelSurvey survey_levels(const circlemap::CircleMapSpec& map, const rotnum::ContinuedFraction& cf,
                          long n_lo, long n_hi, long sample_count, long density_depth,
                          const PrecisionContext& ctx) {
    if (n_lo < 2) throw DomainError("survey_levels: first level must be >= 2");
    if (n_hi < n_lo) throw DomainError("survey_levels: empty level range");
    if (cf.depth() < n_hi + 1)
        throw DomainError("survey_levels: continued fraction too shallow for level " +
                          std::to_string(n_hi) + " + 1");
    const PrecisionContext wide = ctx.guard();
    const long chain_need = q_as_long(cf, n_hi + 1) + q_as_long(cf, n_hi) + 1;
    const long orbit_len = std::max(chain_need, density_depth);
    if (orbit_len > circlemap::kDefaultOrbitBudget)
        throw ResourceError("survey_levels: orbit of " + std::to_string(orbit_len) +
                            " points exceeds the budget");

    auto orbit = std::make_shared<circlemap::OrbitCache>(
        circlemap::iterate_orbit(map, wide.zero(), orbit_len, wide));
    const conjugacy::ConjugacySamples samples = conjugacy::conjugacy_samples(*orbit, cf.rho);
    const conjugacy::DensityEstimate density = conjugacy::density_estimate(samples);
    const rotnum::GapSequence gaps = rotnum::gap_sequence(cf, ctx);
    const DenjoyReport denjoy = denjoy_scan(map, cf, n_hi, sample_count, ctx);

    std::vector<DynamicalPartition> parts;
    parts.reserve(static_cast<size_t>(n_hi - n_lo) + 3);
    for (long n = n_lo - 1; n <= n_hi + 1; ++n)
        parts.push_back(build_partition(orbit, cf, n, ctx));
    auto part_at = [&](long n) -> const DynamicalPartition& {
        return parts[static_cast<size_t>(n - (n_lo - 1))];
    };

    std::vector<BigFloat> lens;
    lens.reserve(denjoy.per_level.size());
    for (const DenjoyLevel& row : denjoy.per_level) lens.push_back(row.max_len);

    LevelSurvey survey;
    survey.deviation_vanishes = denjoy.deviation_vanishes;
    survey.denjoy_nu = denjoy.fitted_nu;
    const BigFloat one(1L, ctx.bits);
    std::vector<std::pair<BigFloat, BigFloat>> decay_pts;
    for (long n = n_lo; n <= n_hi; ++n) {
        const IdentityResiduals ids =
            exact_identities_check(map, part_at(n - 1), part_at(n), part_at(n + 1), ctx);
        const SchwarzSums sums = schwarz_sums(map, part_at(n), density, ctx);
        LevelSummary row{n,
                         cf.q(n),
                         ctx.round(gaps.delta(n)),
                         denjoy.per_level[static_cast<size_t>(n)].sup_dev,
                         e_n_sigma(gaps, n, one),
                         epsilon_n_alpha(lens, n, one),
                         sums.p_sum,
                         sums.pbar_sum,
                         ids.observ1,
                         ids.observ2,
                         ids.observ3};
        if (n >= 4 && !row.p_sum.is_zero())
            decay_pts.push_back({gaps.delta(n - 1), abs(row.p_sum)});
        survey.rows.push_back(std::move(row));
    }
    if (decay_pts.size() >= 2) survey.p_decay = log_slope_fit(decay_pts);
    return survey;
}

void write_level_csv(const LevelSurvey& survey, std::ostream& os) {
    os << "n,q_n,delta_n,sup_dev,e_n_1,eps_n_1,p_sum,pbar_sum,observ1_res,observ2_res,"
          "observ3_res\n";
    for (const LevelSummary& r : survey.rows) {
        os << r.level << "," << r.q.get_str() << "," << r.gap.to_decimal(20) << ","
           << r.sup_dev.to_decimal(20) << "," << r.e1.to_decimal(20) << ","
           << r.eps1.to_decimal(20) << "," << r.p_sum.to_decimal(20) << ","
           << r.pbar_sum.to_decimal(20) << "," << r.observ1_res.to_decimal(20) << ","
           << r.observ2_res.to_decimal(20) << "," << r.observ3_res.to_decimal(20) << "\n";
    }
}

}  // namespace circlelab::renorm
