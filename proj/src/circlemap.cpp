#include "circlelab/circlemap.hpp"

#include <algorithm>

namespace circlelab::circlemap {

namespace {

mpfr_prec_t wider(mpfr_prec_t a, mpfr_prec_t b) { return std::max(a, b); }

BigFloat promote(const BigFloat& x, mpfr_prec_t wp) {
    BigFloat r(wp);
    mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

}  // namespace

Jet perturbation_jet(const BigFloat& beta, long lambda, long terms, const BigFloat& x,
                     mpfr_prec_t wp) {
    const BigFloat two_pi = 2L * BigFloat::pi(wp);
    const BigFloat lam(lambda, wp);
    // per-step decay lambda^-(3+beta), applied multiplicatively
    const BigFloat step = exp(-(BigFloat(3L, wp) + promote(beta, wp)) * log(lam));
    BigFloat coef(1L, wp);
    mpz_class freq = 1;
    Jet s{BigFloat(0L, wp), BigFloat(0L, wp), BigFloat(0L, wp), BigFloat(0L, wp)};
    BigFloat sn(wp), cn(wp);
    for (long k = 1; k <= terms; ++k) {
        coef *= step;
        freq *= lambda;
        BigFloat w = two_pi * BigFloat(freq, wp);
        BigFloat::sin_cos(sn, cn, w * x);
        s.value += coef * sn;
        s.d1 += coef * w * cn;
        s.d2 -= coef * w * w * sn;
        s.d3 -= coef * w * w * w * cn;
    }
    return s;
}

CircleMapSpec::CircleMapSpec(Family f, BigFloat omega, BigFloat a, BigFloat beta, long lambda,
                             long terms)
    : family_(f),
      omega_(std::move(omega)),
      a_(std::move(a)),
      beta_(std::move(beta)),
      lambda_(lambda),
      terms_(terms) {}

CircleMapSpec CircleMapSpec::rigid_rotation(const BigFloat& omega) {
    return CircleMapSpec(Family::RigidRotation, omega, BigFloat(0L, omega.precision()),
                         BigFloat(0L, 64), 0, 0);
}

CircleMapSpec CircleMapSpec::sine_family(const BigFloat& omega, const BigFloat& a) {
    if (!(abs(a) < 1L))
        throw DomainError("sine_family: |a| < 1 required for a diffeomorphism");
    return CircleMapSpec(Family::SineFamily, omega, a, BigFloat(0L, 64), 0, 0);
}

CircleMapSpec CircleMapSpec::weierstrass_family(const BigFloat& omega, const BigFloat& a,
                                                const BigFloat& beta, long lambda, long terms) {
    if (!(beta > 0L) || !(beta < 1L))
        throw DomainError("weierstrass_family: beta must lie in (0,1)");
    if (lambda < 2) throw DomainError("weierstrass_family: lambda must be an integer >= 2");
    if (terms < 1) throw DomainError("weierstrass_family: need at least one term");
    // sup|s'| <= 2 pi sum lambda^(-k(2+beta)); require a * bound < 1
    mpfr_prec_t wp = wider(a.precision(), beta.precision());
    const BigFloat lam(lambda, wp);
    const BigFloat decay = exp(-(BigFloat(2L, wp) + promote(beta, wp)) * log(lam));
    BigFloat bound(0L, wp), c(1L, wp);
    for (long k = 1; k <= terms; ++k) {
        c *= decay;
        bound += c;
    }
    bound *= 2L * BigFloat::pi(wp);
    if (!(abs(a) * bound < 1L))
        throw DomainError("weierstrass_family: a * sup|s'| < 1 violated (derivative bound " +
                          (abs(a) * bound).to_decimal(8) + ")");
    return CircleMapSpec(Family::WeierstrassFamily, omega, a, beta, lambda, terms);
}

BigFloat CircleMapSpec::weierstrass_default_coupling(const BigFloat& beta, long lambda,
                                                     long terms, mpfr_prec_t prec) {
    const BigFloat lam(lambda, prec);
    const BigFloat decay = exp(-(BigFloat(2L, prec) + promote(beta, prec)) * log(lam));
    BigFloat bound(0L, prec), c(1L, prec);
    for (long k = 1; k <= terms; ++k) {
        c *= decay;
        bound += c;
    }
    bound *= 2L * BigFloat::pi(prec);
    return BigFloat(0.5, prec) / bound;
}

CircleMapSpec CircleMapSpec::with_omega(const BigFloat& omega) const {
    switch (family_) {
        case Family::RigidRotation:
            return rigid_rotation(omega);
        case Family::SineFamily:
            return sine_family(omega, a_);
        case Family::WeierstrassFamily:
            return weierstrass_family(omega, a_, beta_, lambda_, terms_);
    }
    throw DomainError("with_omega: unknown family");
}

mpfr_prec_t CircleMapSpec::param_precision() const {
    return wider(omega_.precision(), wider(a_.precision(), beta_.precision()));
}

BigFloat CircleMapSpec::lift(const BigFloat& x) const {
    const mpfr_prec_t wp = wider(x.precision(), param_precision());
    switch (family_) {
        case Family::RigidRotation:
            return x + omega_;
        case Family::SineFamily: {
            const BigFloat two_pi = 2L * BigFloat::pi(wp);
            return x + omega_ + a_ / two_pi * sin(two_pi * x);
        }
        case Family::WeierstrassFamily: {
            const BigFloat two_pi = 2L * BigFloat::pi(wp);
            const BigFloat lam(lambda_, wp);
            const BigFloat step = exp(-(BigFloat(3L, wp) + promote(beta_, wp)) * log(lam));
            BigFloat coef(1L, wp), s(0L, wp);
            mpz_class freq = 1;
            for (long k = 1; k <= terms_; ++k) {
                coef *= step;
                freq *= lambda_;
                s += coef * sin(two_pi * BigFloat(freq, wp) * x);
            }
            return x + omega_ + a_ * s;
        }
    }
    throw DomainError("lift: unknown family");
}

Jet CircleMapSpec::lift_jet(const BigFloat& x) const {
    const mpfr_prec_t wp = wider(x.precision(), param_precision());
    switch (family_) {
        case Family::RigidRotation: {
            Jet j{x + omega_, BigFloat(1L, wp), BigFloat(0L, wp), BigFloat(0L, wp)};
            return j;
        }
        case Family::SineFamily: {
            const BigFloat two_pi = 2L * BigFloat::pi(wp);
            BigFloat sn(wp), cn(wp);
            BigFloat::sin_cos(sn, cn, two_pi * x);
            Jet j;
            j.value = x + omega_ + a_ / two_pi * sn;
            j.d1 = 1L + a_ * cn;
            j.d2 = -(two_pi * a_ * sn);
            j.d3 = -(two_pi * two_pi * a_ * cn);
            return j;
        }
        case Family::WeierstrassFamily: {
            Jet s = perturbation_jet(beta_, lambda_, terms_, promote(x, wp), wp);
            Jet j;
            j.value = x + omega_ + a_ * s.value;
            j.d1 = 1L + a_ * s.d1;
            j.d2 = a_ * s.d2;
            j.d3 = a_ * s.d3;
            return j;
        }
    }
    throw DomainError("lift_jet: unknown family");
}

JetValue eval_jet(const CircleMapSpec& map, const BigFloat& x, const PrecisionContext& ctx) {
    const mpfr_prec_t wp = wider(ctx.bits, x.precision());
    BigFloat xc = wrap_unit(promote(x, wp));
    Jet j = map.lift_jet(xc);
    if (!(j.d1 > 0L))
        throw DomainError("eval_jet: nonpositive derivative — map is not a diffeomorphism");
    return JetValue{xc, wrap_unit(j.value), j.d1, j.d2, j.d3};
}

BigFloat schwarzian(const CircleMapSpec& map, const BigFloat& x, const PrecisionContext& ctx) {
    const mpfr_prec_t wp = wider(ctx.bits, x.precision());
    if (map.family() == Family::RigidRotation) return BigFloat(0L, wp);
    return circlelab::schwarzian(map.lift_jet(wrap_unit(promote(x, wp))));
}

IteratedLift::IteratedLift(const CircleMapSpec& map, long steps) : map_(map), steps_(steps) {
    if (steps < 0) throw DomainError("IteratedLift: steps must be >= 0");
}

Jet IteratedLift::jet_at(const BigFloat& x) const {
    // the result depends on the argument's precision (it widens the working
    // precision), so a memo hit requires the same value at the same precision
    for (const auto& [key, jet] : memo_)
        if (key.precision() == x.precision() && key == x) return jet;
    const mpfr_prec_t wp = wider(x.precision(), map_.param_precision());
    Jet acc{promote(x, wp), BigFloat(1L, wp), BigFloat(0L, wp), BigFloat(0L, wp)};
    for (long i = 0; i < steps_; ++i)
        acc = compose_jets(map_.lift_jet(acc.value), acc);
    if (memo_.size() < 8) memo_.emplace_back(x, acc);
    return acc;
}

OrbitCache iterate_orbit(const CircleMapSpec& map, const BigFloat& seed, long n,
                         const PrecisionContext& ctx, long max_points) {
    if (n < 1) throw DomainError("iterate_orbit: n must be >= 1");
    if (n > max_points)
        throw ResourceError("iterate_orbit: requested " + std::to_string(n) +
                            " points exceeds the orbit budget of " + std::to_string(max_points));
    const mpfr_prec_t wp = wider(ctx.bits, seed.precision());

    OrbitCache oc{map, promote(seed, wp), {}, wp};
    oc.pts.reserve(static_cast<size_t>(n));
    BigFloat x = wrap_unit(promote(seed, wp));
    oc.pts.push_back(x);
    if (map.family() == Family::RigidRotation) {
        // closed form i*omega + seed: same cost as stepping, but keeps the
        // points bitwise aligned with the rotation orbit used by the
        // conjugacy construction
        const BigFloat om = promote(map.omega(), wp);
        for (long i = 1; i < n; ++i)
            oc.pts.push_back(wrap_unit(oc.pts[0] + BigFloat(i, wp) * om));
    } else {
        for (long i = 1; i < n; ++i) {
            x = wrap_unit(map.lift(x));
            oc.pts.push_back(x);
        }
    }
    return oc;
}

namespace {

constexpr long kIterationHardCap = 50'000'000;

}  // namespace

std::vector<ReturnRecord> closest_returns(const CircleMapSpec& map, const BigFloat& seed,
                                          long max_iter, const PrecisionContext& ctx) {
    if (max_iter < 1) throw DomainError("closest_returns: max_iter must be >= 1");
    if (max_iter > kIterationHardCap)
        throw ResourceError("closest_returns: max_iter exceeds the iteration budget");
    const mpfr_prec_t wp = wider(ctx.bits, seed.precision());
    // distances below this are numerically indistinguishable from a periodic
    // return at working precision
    const BigFloat zero_band = BigFloat::pow2(-static_cast<long>(wp / 2), wp);

    const BigFloat x0 = wrap_unit(promote(seed, wp));
    BigFloat x = x0;
    mpz_class winding = 0;
    BigFloat best(2L, wp);
    std::vector<ReturnRecord> out;
    for (long m = 1; m <= max_iter; ++m) {
        BigFloat ly = map.lift(x);
        BigFloat fl = floor(ly);
        x = ly - fl;
        if (x >= 1L) x -= 1L;  // guard against rounding to 1
        winding += fl.floor_mpz();
        BigFloat ds = signed_circle_diff(x, x0);
        BigFloat d = abs(ds);
        if (d <= zero_band) {
            mpz_class p = winding + (x - x0 - ds).round_mpz();
            throw PeriodicOrbitError(m, p.get_si());
        }
        if (d < best) {
            best = d;
            mpz_class p = winding + (x - x0 - ds).round_mpz();
            out.push_back(ReturnRecord{m, p, ds.sign()});
        }
    }
    return out;
}

namespace {

// Rebuilds the quotient ladder from closest-return records, verifying the
// convergent recurrence (time = k q_(n-1) + q_(n-2), same for windings) as it
// goes. Stops after max_depth quotients.
struct Ladder {
    std::vector<mpz_class> ks;
    mpz_class q1 = 1, q2 = 0;  // q_(n-1), q_(n-2)
    mpz_class p1 = 0, p2 = 1;

    bool feed(long time, const mpz_class& p, long max_depth) {
        if (time == 1 && p == 0) return false;  // the record for q_0 itself
        mpz_class t(time);
        mpz_class knum = t - q2;
        if (knum <= 0 || knum % q1 != 0)
            throw CombinatoricsError(
                "closest-return times break the convergent recurrence at time " +
                std::to_string(time) + " (wrong precision or budget?)");
        mpz_class k = knum / q1;
        if (p != k * p1 + p2)
            throw CombinatoricsError(
                "closest-return windings break the convergent recurrence at time " +
                std::to_string(time));
        ks.push_back(k);
        q2 = q1;
        q1 = t;
        p2 = p1;
        p1 = p;
        return static_cast<long>(ks.size()) >= max_depth;
    }
};

}  // namespace

RotationEstimate rotation_number(const CircleMapSpec& map, const BigFloat& seed,
                                 const PrecisionContext& ctx, long target_depth, long max_iter) {
    if (target_depth < 1) throw DomainError("rotation_number: target_depth must be >= 1");
    auto records = closest_returns(map, seed, max_iter, ctx);
    Ladder lad;
    for (const auto& r : records)
        if (lad.feed(r.time, r.winding, target_depth)) break;
    const long N = static_cast<long>(lad.ks.size());
    if (N < 1)
        throw CombinatoricsError("rotation_number: no quotient resolved within the budget");

    rotnum::ContinuedFraction cf;
    cf.quotients = lad.ks;
    cf.rebuild_tables();
    // An interior point of the depth-N cylinder: the value of [k_1..k_N, 2].
    // Its own expansion therefore agrees with the observed quotients through
    // level N, and it sits within the cylinder width of the true rho.
    mpq_class est(2 * cf.p(N) + cf.p(N - 1), 2 * cf.q(N) + cf.q(N - 1));
    est.canonicalize();
    cf.rho = ctx.of(est);
    cf.rational_termination = false;

    // rho is pinned between the convergents at levels N-1 and N
    BigFloat width = ctx.of(mpq_class(1, mpz_class(cf.q(N - 1) * cf.q(N))));
    BigFloat rho = cf.rho;
    return RotationEstimate{rho, std::move(cf), width, N};
}

RotationEstimate rotation_number(const CircleMapSpec& map, const PrecisionContext& ctx,
                                 long target_depth, long max_iter) {
    return rotation_number(map, BigFloat(0L, ctx.bits), ctx, target_depth, max_iter);
}

// ---------------------------------------------------------------------------
// parameter tuning
// ---------------------------------------------------------------------------

namespace {

enum class TongueSide { Below, Locked, Above };

// Classifies omega against the p/q tongue by the sign pattern of the
// displacement L^q(s) - s - p over 8 fixed seeds: all negative means
// rho < p/q, all positive rho > p/q, a straddle means a periodic orbit
// exists (mode-locked).
TongueSide tongue_side(const CircleMapSpec& fam, const BigFloat& omega, const mpz_class& p,
                       long q, mpfr_prec_t wp) {
    CircleMapSpec m = fam.with_omega(omega);
    const BigFloat pv(p, wp);
    bool any_le = false, any_ge = false;
    for (long i = 0; i < 8; ++i) {
        mpq_class si(i, 8);
        si.canonicalize();
        BigFloat s(si, wp);
        BigFloat w = s;
        for (long j = 0; j < q; ++j) w = m.lift(w);
        int sg = (w - s - pv).sign();
        if (sg <= 0) any_le = true;
        if (sg >= 0) any_ge = true;
        if (any_le && any_ge) return TongueSide::Locked;
    }
    return any_ge ? TongueSide::Above : TongueSide::Below;
}

}  // namespace

TongueReport map_tongue(const CircleMapSpec& family, const mpz_class& p, const mpz_class& q,
                        const BigFloat& omega_tol, const PrecisionContext& ctx) {
    if (q <= 0 || p < 0 || p > q)
        throw DomainError("map_tongue: need 0 <= p <= q with q >= 1");
    if (!(omega_tol > 0L)) throw DomainError("map_tongue: omega_tol must be positive");
    if (q > 100000) throw ResourceError("map_tongue: q exceeds the tongue-probing budget");
    const long qn = static_cast<long>(q.get_si());
    const mpfr_prec_t wp = ctx.bits;
    mpq_class frac(p, q);
    frac.canonicalize();
    const BigFloat center = ctx.of(frac);

    if (family.family() == Family::RigidRotation || family.coupling().is_zero())
        return TongueReport{p, q, center, center};  // zero-width plateau

    // locate a locked parameter near the rational value
    BigFloat c = center;
    bool locked = tongue_side(family, c, p, qn, wp) == TongueSide::Locked;
    for (int j = 1; j <= 64 && !locked; ++j) {
        for (int sgn : {+1, -1}) {
            BigFloat cand = center + BigFloat(static_cast<long>(sgn * j), wp) / 512L;
            if (tongue_side(family, cand, p, qn, wp) == TongueSide::Locked) {
                c = cand;
                locked = true;
                break;
            }
        }
    }

    auto bisect_edge = [&](BigFloat inside, BigFloat outside) {
        while (abs(inside - outside) > omega_tol) {
            BigFloat mid = (inside + outside) / 2L;
            if (tongue_side(family, mid, p, qn, wp) == TongueSide::Locked)
                inside = mid;
            else
                outside = mid;
        }
        return inside;
    };

    if (!locked) {
        // no measurable plateau at this coupling: pin the below/above
        // crossing and report a width-zero interval
        BigFloat lo = center - ctx.of(0.25), hi = center + ctx.of(0.25);
        while (hi - lo > omega_tol) {
            BigFloat mid = (lo + hi) / 2L;
            if (tongue_side(family, mid, p, qn, wp) == TongueSide::Below)
                lo = mid;
            else
                hi = mid;
        }
        return TongueReport{p, q, lo, lo};
    }

    // walk outward to flank the plateau, then bisect both edges
    BigFloat left = c - ctx.of(0.25);
    while (tongue_side(family, left, p, qn, wp) == TongueSide::Locked) left -= ctx.of(0.25);
    BigFloat right = c + ctx.of(0.25);
    while (tongue_side(family, right, p, qn, wp) == TongueSide::Locked) right += ctx.of(0.25);
    return TongueReport{p, q, bisect_edge(c, left), bisect_edge(c, right)};
}

namespace {

struct ProbeOutcome {
    bool less = false;            // steer: rho(omega) below the target
    bool hit_target_rational = false;  // locked exactly on the target fraction
    mpz_class lock_p, lock_q;
    long matched = 0;             // target quotients confirmed in order
    std::vector<mpz_class> observed;
};

// One tuning probe: expand closest returns of the map at the given omega and
// compare the quotient ladder against the target prefix. Decides LESS or
// GREATER with a certificate when a quotient mismatches (alternating
// cylinder order) or when the orbit locks on a rational; once the whole
// prefix is matched (or the budget is gone) it steers by the sign of the
// displacement proxy disp(q_m) - q_m*tau, which is monotone in omega.
ProbeOutcome probe_omega(const CircleMapSpec& fam, const BigFloat& omega,
                         const rotnum::ContinuedFraction& target, const BigFloat& tau,
                         long budget, mpfr_prec_t wp) {
    CircleMapSpec m = fam.with_omega(omega);
    const BigFloat zero_band = BigFloat::pow2(-static_cast<long>(wp / 2), wp);
    const BigFloat x0(0L, wp);
    BigFloat x = x0;
    mpz_class winding = 0;
    BigFloat best(2L, wp);
    Ladder lad;
    ProbeOutcome out;
    BigFloat last_disp(0L, wp);
    long last_time = 0;

    auto rational_outcome = [&](mpz_class rp, mpz_class rq) {
        mpq_class r(rp, rq);
        r.canonicalize();
        if (target.rational_termination) {
            mpq_class t(target.p(target.depth()), target.q(target.depth()));
            t.canonicalize();
            if (r == t) {
                out.hit_target_rational = true;
                out.lock_p = r.get_num();
                out.lock_q = r.get_den();
                return out;
            }
        }
        out.less = BigFloat(r, wp) < tau;
        return out;
    };

    for (long step = 1; step <= budget; ++step) {
        BigFloat ly = m.lift(x);
        BigFloat fl = floor(ly);
        x = ly - fl;
        if (x >= 1L) x -= 1L;
        winding += fl.floor_mpz();
        BigFloat ds = signed_circle_diff(x, x0);
        BigFloat d = abs(ds);
        mpz_class disp_int = winding + (x - x0 - ds).round_mpz();
        if (d <= zero_band) return rational_outcome(disp_int, mpz_class(step));
        if (!(d < best)) continue;
        best = d;
        last_disp = BigFloat(winding, wp) + (x - x0);
        last_time = step;
        if (step == 1 && disp_int == 0) continue;  // the q_0 record

        long before = static_cast<long>(lad.ks.size());
        lad.feed(step, disp_int, 1L << 30);
        long level = before + 1;
        const mpz_class& k = lad.ks.back();
        if (level <= target.depth()) {
            const mpz_class& t = target.quotients[static_cast<size_t>(level - 1)];
            if (k != t) {
                // a larger quotient at an odd level means a smaller value,
                // and conversely at even levels
                out.less = (k > t) == (level % 2 == 1);
                out.matched = level - 1;
                out.observed = lad.ks;
                return out;
            }
            out.matched = level;
        }
        if (out.matched == target.depth()) break;  // fully inside the cylinder
    }
    out.observed = lad.ks;
    // displacement proxy at the deepest recorded return
    out.less = (last_disp - BigFloat(last_time, wp) * tau).sign() < 0;
    return out;
}

rotnum::ContinuedFraction cf_from_quotient_ladder(const std::vector<mpz_class>& ks,
                                                  const PrecisionContext& ctx) {
    rotnum::ContinuedFraction cf;
    cf.quotients = ks;
    cf.rebuild_tables();
    const long N = cf.depth();
    mpq_class est(2 * cf.p(N) + cf.p(N - 1), 2 * cf.q(N) + cf.q(N - 1));
    est.canonicalize();
    cf.rho = ctx.of(est);
    cf.rational_termination = false;
    return cf;
}

}  // namespace

TuneResult tune_parameter_report(const CircleMapSpec& family,
                                 const rotnum::ContinuedFraction& target, const BigFloat& tol,
                                 const PrecisionContext& ctx, long probe_budget) {
    if (target.depth() < 1) throw DomainError("tune_parameter: empty target");
    if (!(tol > 16L * ctx.eps()))
        throw DomainError("tune_parameter: tol must exceed 16*eps of the context");
    if (probe_budget < 8 || probe_budget > kIterationHardCap)
        throw ResourceError("tune_parameter: probe budget out of range");

    const mpfr_prec_t wp = ctx.guard().bits;
    const BigFloat tau = promote(target.rho, wp);

    if (family.family() == Family::RigidRotation || family.coupling().is_zero()) {
        // rho(omega) = omega: one step
        TuneResult r{ctx.round(target.rho), ctx.zero(), target.depth(), ctx.zero(), target};
        long N = target.depth();
        r.cylinder_width = ctx.of(mpq_class(1, mpz_class(target.q(N) * (target.q(N) + target.q(N - 1)))));
        return r;
    }

    BigFloat lo(0L, wp), hi(1L, wp);
    auto run_probe = [&](const BigFloat& om) {
        ProbeOutcome out = probe_omega(family, om, target, tau, probe_budget, wp);
        if (out.hit_target_rational)
            throw ModeLockedError(
                map_tongue(family, out.lock_p, out.lock_q, max(tol, ctx.of(1e-9)), ctx));
        return out;
    };
    // endpoint sanity: rho(0) <= tau <= rho(1) for these families
    if (!run_probe(lo).less || run_probe(hi).less)
        throw DomainError("tune_parameter: target rotation number not bracketed by omega in [0,1]");

    long steps = 0;
    const long max_steps = 400;
    while (hi - lo > tol && steps < max_steps) {
        BigFloat mid = (lo + hi) / 2L;
        if (run_probe(mid).less)
            lo = mid;
        else
            hi = mid;
        ++steps;
    }

    BigFloat omega_star = ctx.round((lo + hi) / 2L);
    ProbeOutcome fin = probe_omega(family, promote(omega_star, wp), target, tau, probe_budget, wp);
    if (fin.hit_target_rational || fin.matched < 1)
        throw DomainError("tune_parameter: could not certify the target prefix at the tuned omega");

    TuneResult r;
    r.omega = omega_star;
    r.omega_bracket = ctx.round(hi - lo);
    r.matched_depth = fin.matched;
    const long mN = fin.matched;
    r.cylinder_width =
        ctx.of(mpq_class(1, mpz_class(target.q(mN) * (target.q(mN) + target.q(mN - 1)))));
    r.realized = cf_from_quotient_ladder(fin.observed, ctx);
    return r;
}

BigFloat tune_parameter(const CircleMapSpec& family, const rotnum::ContinuedFraction& target,
                        const BigFloat& tol, const PrecisionContext& ctx, long probe_budget) {
    return tune_parameter_report(family, target, tol, ctx, probe_budget).omega;
}

}  // namespace circlelab::circlemap
