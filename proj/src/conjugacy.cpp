#include "circlelab/conjugacy.hpp"

#include <algorithm>
#include <cstddef>

#include "circlelab/errors.hpp"

namespace circlelab::conjugacy {

namespace {

BigFloat promote(const BigFloat& x, mpfr_prec_t wp) {
    BigFloat r(wp);
    mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

}  // namespace

ConjugacySamples conjugacy_samples(const circlemap::OrbitCache& orbit, const BigFloat& rho) {
    const long n = orbit.size();
    if (n < 1) throw DomainError("conjugacy_samples: empty orbit");
    const mpfr_prec_t wp = orbit.prec;
    const BigFloat rp = promote(rho, wp);
    if (!(rp > 0L) || !(rp < 1L))
        throw DomainError("conjugacy_samples: rho must lie in (0,1)");

    ConjugacySamples cs;
    cs.depth = n;
    cs.pairs.reserve(static_cast<size_t>(n));
    // phi(xi_i) = {i rho}, normalized to phi(xi_0) = 0. Same expression as
    // the rigid-rotation orbit of 0, so for T = R_rho the two columns agree
    // bitwise.
    for (long i = 0; i < n; ++i)
        cs.pairs.emplace_back(orbit[i], wrap_unit(BigFloat(i, wp) * rp));
    std::sort(cs.pairs.begin(), cs.pairs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    // Both orbits must traverse the circle in the same cyclic order, i.e. the
    // phi column scanned in xi order is cyclically increasing: exactly one
    // descent including the wrap pair.
    if (n >= 2) {
        long descents = 0;
        for (long k = 0; k < n; ++k) {
            const auto& cur = cs.pairs[static_cast<size_t>(k)];
            const auto& nxt = cs.pairs[static_cast<size_t>((k + 1) % n)];
            if (k + 1 < n && cur.first == nxt.first)
                throw CombinatoricsError("conjugacy_samples: coincident orbit points xi_(" +
                                         std::to_string(k) + ") = xi_(" + std::to_string(k + 1) +
                                         ") — rotation number is rational at this precision");
            if (cur.second == nxt.second)
                throw CombinatoricsError(
                    "conjugacy_samples: coincident rotation samples — rho is rational at this "
                    "precision");
            if (nxt.second < cur.second) ++descents;
        }
        if (descents != 1)
            throw CombinatoricsError(
                "conjugacy_samples: circular orders differ (" + std::to_string(descents) +
                " descents in the rotation column) — rho does not match the map's rotation "
                "number at depth " +
                std::to_string(n));
    }
    return cs;
}

DensityEstimate density_estimate(const ConjugacySamples& samples) {
    const long n = samples.depth;
    if (n < 3) throw DomainError("density_estimate: need at least 3 samples");

    std::vector<std::pair<BigFloat, BigFloat>> mids;  // (midpoint, h)
    mids.reserve(static_cast<size_t>(n));
    BigFloat wsum, tsum;
    for (long k = 0; k < n; ++k) {
        const auto& cur = samples.pairs[static_cast<size_t>(k)];
        const auto& nxt = samples.pairs[static_cast<size_t>((k + 1) % n)];
        BigFloat dx = nxt.first - cur.first;
        if (k + 1 == n) dx = dx + 1L;  // wrap gap
        if (!(dx > 0L))
            throw DomainError("density_estimate: duplicate xi values (gap " + std::to_string(k) +
                              " is degenerate)");
        BigFloat dphi = nxt.second - cur.second;
        if (dphi.is_zero())
            throw DomainError("density_estimate: duplicate phi values (gap " + std::to_string(k) +
                              " is degenerate)");
        if (dphi < 0L) dphi = dphi + 1L;  // the single cyclic descent
        BigFloat h = dphi / dx;
        wsum = k == 0 ? h * dx : wsum + h * dx;
        tsum = k == 0 ? dx : tsum + dx;
        mids.emplace_back(wrap_unit(cur.first + dx / 2L), h);
    }
    std::sort(mids.begin(), mids.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    DensityEstimate de;
    de.scheme = "forward divided differences of the exact conjugacy samples over adjacent "
                "circle gaps, one value per gap at its midpoint";
    de.weighted_mean = wsum / tsum;
    de.at.reserve(mids.size());
    de.h_values.reserve(mids.size());
    for (auto& m : mids) {
        de.at.push_back(std::move(m.first));
        de.h_values.push_back(std::move(m.second));
    }
    return de;
}

const BigFloat& DensityEstimate::value_near(const BigFloat& x) const {
    if (at.empty()) throw DomainError("DensityEstimate::value_near: empty estimate");
    const size_t n = at.size();
    const BigFloat xc = wrap_unit(x);
    size_t hi = static_cast<size_t>(std::lower_bound(at.begin(), at.end(), xc) - at.begin());
    const size_t a = (hi + n - 1) % n;  // sorted predecessor (wraps)
    const size_t b = hi % n;            // sorted successor (wraps)
    return circle_dist(xc, at[a]) <= circle_dist(xc, at[b]) ? h_values[a] : h_values[b];
}

BigFloat homologic_residual(const circlemap::CircleMapSpec& map, const DensityEstimate& density,
                            const PrecisionContext& ctx) {
    if (density.at.empty()) throw DomainError("homologic_residual: empty density estimate");
    BigFloat worst = ctx.zero();
    for (size_t k = 0; k < density.at.size(); ++k) {
        const circlemap::JetValue jv = circlemap::eval_jet(map, density.at[k], ctx);
        const BigFloat r = abs(density.h_values[k] - jv.f1 * density.value_near(jv.f));
        if (r > worst) worst = r;
    }
    return worst;
}

std::pair<BigFloat, BigFloat> default_holder_scales(
    const std::vector<std::pair<BigFloat, BigFloat>>& values) {
    if (values.size() < 2) throw DomainError("default_holder_scales: need at least 2 samples");
    std::vector<BigFloat> xs;
    xs.reserve(values.size());
    for (const auto& v : values) xs.push_back(wrap_unit(v.first));
    std::sort(xs.begin(), xs.end());
    std::vector<BigFloat> gaps;
    gaps.reserve(xs.size());
    for (size_t k = 0; k + 1 < xs.size(); ++k) gaps.push_back(xs[k + 1] - xs[k]);
    gaps.push_back(xs.front() - xs.back() + 1L);
    std::nth_element(gaps.begin(), gaps.begin() + static_cast<long>(gaps.size() / 2), gaps.end());
    const BigFloat median = gaps[gaps.size() / 2];
    return {8L * median, BigFloat(1L, median.precision()) / 8L};
}

RegularityEstimate holder_exponent(const std::vector<std::pair<BigFloat, BigFloat>>& values,
                                   const BigFloat& scale_min, const BigFloat& scale_max) {
    if (values.size() < 1000)
        throw DomainError("holder_exponent: need at least 1000 samples, got " +
                          std::to_string(values.size()));
    if (!(scale_min > 0L) || !(scale_max > scale_min))
        throw DomainError("holder_exponent: scale window must satisfy 0 < min < max");
    if (scale_max < 100L * scale_min)
        throw DomainError("holder_exponent: scale window spans less than two decades");

    std::vector<std::pair<BigFloat, BigFloat>> pts(values);
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    const size_t n = pts.size();

    // Dyadic buckets (s/2, s] walking down from scale_max while they stay
    // inside the window.
    std::vector<BigFloat> scales;
    for (BigFloat s = scale_max; s >= 2L * scale_min; s = s / 2L) scales.push_back(s);

    std::vector<std::pair<BigFloat, BigFloat>> sups;  // (scale, sup |v diff|)
    for (const BigFloat& s : scales) {
        const BigFloat half = s / 2L;
        BigFloat sup(0L, pts[0].second.precision());
        size_t lo = 0, hi = 0;  // pair window: x_j - x_i in (s/2, s]
        for (size_t i = 0; i + 1 < n; ++i) {
            if (lo < i + 1) lo = i + 1;
            if (hi < i + 1) hi = i + 1;
            while (lo < n && pts[lo].first - pts[i].first <= half) ++lo;
            if (hi < lo) hi = lo;
            while (hi < n && pts[hi].first - pts[i].first <= s) ++hi;
            for (size_t j = lo; j < hi; ++j) {
                const BigFloat d = abs(pts[i].second - pts[j].second);
                if (d > sup) sup = d;
            }
        }
        sups.emplace_back(s, sup);
    }
    std::reverse(sups.begin(), sups.end());  // ascending in scale for the fit

    RegularityEstimate re;
    re.scale_min = scale_min;
    re.scale_max = scale_max;
    long usable = 0;
    for (const auto& p : sups)
        if (!p.second.is_zero()) ++usable;
    if (usable < 2) {
        // Flat data: no scale dependence measurable; report the Lipschitz cap.
        re.exponent = BigFloat(1L, scale_min.precision());
        re.cap_hit = true;
        re.fit.points = sups;
        return re;
    }
    re.fit = log_slope_fit(sups);
    re.cap_hit = re.fit.slope.to_double() >= kLipschitzCap;
    BigFloat e = re.fit.slope;
    if (e < 0L) e = BigFloat(0L, e.precision());
    if (e > 1L) e = BigFloat(1L, e.precision());
    re.exponent = e;
    return re;
}

ExponentSchedule exponent_schedule(const mpq_class& beta, const mpq_class& delta) {
    mpq_class b(beta), d(delta);
    b.canonicalize();
    d.canonicalize();
    if (!(b > 0 && b < d && d < 1))
        throw DomainError("exponent_schedule requires 0 < beta < delta < 1");

    const mpq_class cap = 1 + b;
    const mpq_class factor = mpq_class(2) / (1 + d);  // > 1 since delta < 1

    ExponentSchedule sched;
    sched.beta = b;
    sched.delta = d;
    mpq_class sigma = 1;
    mpq_class power = 1;  // factor^i alongside, for the closed-form check
    sched.sigmas.push_back(sigma);
    while (sigma < cap) {
        if (sched.sigmas.size() > 100000)
            throw ResourceError("exponent_schedule: recurrence failed to reach its fixed point");
        const mpq_class grown = sigma * factor;
        mpq_class next = grown < cap ? grown : cap;
        // Three-way rule: the 1 + sigma - delta branch must never win while
        // sigma < 1 + delta, because (1+sigma-delta)(1+delta) - 2 sigma =
        // (1-delta)(1+delta-sigma) > 0.
        const mpq_class mid = 1 + sigma - d;
        mpq_class three = next < mid ? next : mid;
        if (three != next)
            throw VerificationError("exponent_schedule: three-way minimum disagrees at step " +
                                    std::to_string(sched.sigmas.size()));
        power *= factor;
        const mpq_class closed = power < cap ? power : cap;
        if (closed != next)
            throw VerificationError("exponent_schedule: closed form disagrees at step " +
                                    std::to_string(sched.sigmas.size()));
        sigma = next;
        sched.sigmas.push_back(sigma);
    }
    sched.steps_to_fixpoint = static_cast<long>(sched.sigmas.size()) - 1;
    return sched;
}

RegularityPrediction predicted_regularity(const mpq_class& r, const mpq_class& delta) {
    mpq_class rr(r), d(delta);
    rr.canonicalize();
    d.canonicalize();
    if (!(d > 0 && d < 1)) throw DomainError("predicted_regularity requires 0 < delta < 1");
    if (!(rr > 2 + d && rr < 3 + d))
        throw DomainError("predicted_regularity requires 2 + delta < r < 3 + delta (open)");
    return RegularityPrediction{rr - 1 - d, rr - 2 - d};
}

}  // namespace circlelab::conjugacy
