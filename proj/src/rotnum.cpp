#include "circlelab/rotnum.hpp"

namespace circlelab::rotnum {

BigFloat ContinuedFraction::convergent(long n, const PrecisionContext& ctx) const {
    return ctx.of(mpq_class(p(n), q(n)));
}

void ContinuedFraction::rebuild_tables() {
    p_.assign(1, mpz_class(1));
    q_.assign(1, mpz_class(0));
    p_.emplace_back(0);
    q_.emplace_back(1);
    mpz_class g;
    for (size_t n = 0; n < quotients.size(); ++n) {
        if (quotients[n] < 1)
            throw DomainError("ContinuedFraction: quotients must be >= 1");
        p_.push_back(quotients[n] * p_[n + 1] + p_[n]);
        q_.push_back(quotients[n] * q_[n + 1] + q_[n]);
        // determinant identity q(l) p(l-1) - q(l-1) p(l) = (-1)^l at level
        // l = n+1; a failure would mean a broken recurrence
        mpz_class det = q_[n + 2] * p_[n + 1] - q_[n + 1] * p_[n + 2];
        if (det != ((n % 2 == 0) ? -1 : 1))
            throw DomainError("ContinuedFraction: determinant identity violated");
        mpz_gcd(g.get_mpz_t(), p_[n + 2].get_mpz_t(), q_[n + 2].get_mpz_t());
        if (g != 1)
            throw DomainError("ContinuedFraction: convergent not in lowest terms");
    }
}

ContinuedFraction cf_expand(const BigFloat& rho, long depth, const PrecisionContext& ctx) {
    if (!(rho > 0L) || !(rho < 1L))
        throw DomainError("cf_expand: rho must lie in (0,1)");
    if (depth < 1) throw DomainError("cf_expand: depth must be >= 1");

    const BigFloat near = 16L * ctx.eps();
    ContinuedFraction cf;
    cf.rho = ctx.round(rho);

    // Iterate at guard precision: reciprocal-and-floor amplifies roundoff by
    // roughly q_n^2, and the termination window below is measured in the
    // caller's eps, so the working error must stay far beneath it.
    BigFloat x = ctx.guard().round(cf.rho);
    for (long n = 0; n < depth; ++n) {
        BigFloat y = 1L / x;
        mpz_class k = y.floor_mpz();
        BigFloat frac = y - ctx.guard().of(k);
        if (frac < near) {
            // remainder indistinguishable from zero: treat as exact rational
            cf.quotients.push_back(k);
            cf.rational_termination = true;
            break;
        }
        if (frac > 1L - near) {
            // y is a hair below the next integer: quotient k+1, then done
            cf.quotients.push_back(k + 1);
            cf.rational_termination = true;
            break;
        }
        cf.quotients.push_back(k);
        x = frac;
    }
    cf.rebuild_tables();
    return cf;
}

ContinuedFraction from_quotients(const std::vector<mpz_class>& ks, const PrecisionContext& ctx) {
    if (ks.empty()) throw DomainError("from_quotients: need at least one quotient");
    for (const auto& k : ks)
        if (k < 1) throw DomainError("from_quotients: quotients must be >= 1");
    if (ks.size() > 1 && ks.back() == 1)
        throw DomainError("from_quotients: trailing quotient 1 is not canonical");

    ContinuedFraction cf;
    cf.quotients = ks;
    cf.rational_termination = true;
    cf.rebuild_tables();
    mpq_class v(cf.p(cf.depth()), cf.q(cf.depth()));
    v.canonicalize();
    if (!(v > 0 && v < 1))
        throw DomainError("from_quotients: value must lie in (0,1)");
    cf.rho = ctx.of(v);
    return cf;
}

GapSequence gap_sequence(const ContinuedFraction& cf, const PrecisionContext& ctx) {
    GapSequence g;
    g.rho = cf.rho;
    g.deltas_.reserve(static_cast<size_t>(cf.depth()) + 2);
    g.deltas_.push_back(ctx.of(1L));
    for (long n = 0; n <= cf.depth(); ++n) {
        BigFloat d = abs(ctx.of(cf.q(n)) * cf.rho - ctx.of(cf.p(n)));
        if (d.is_zero()) {
            if (n < cf.depth())
                throw DomainError("gap_sequence: gap vanished before final level (rational rho)");
            break;  // finite cf hit exactly: drop the zero tail entry
        }
        if (!(d < g.deltas_.back()))
            throw DomainError("gap_sequence: gaps must decrease strictly (level " +
                              std::to_string(n) + ")");
        g.deltas_.push_back(d);
    }
    return g;
}

DiophantineWitness diophantine_estimate(const GapSequence& gaps, const PrecisionContext& ctx) {
    const long N = gaps.max_level();
    if (N < 1) throw DomainError("diophantine_estimate: need at least two gap levels");

    DiophantineWitness w;
    w.depth = N;
    w.delta_hat = ctx.of(0L);
    BigFloat raw_max = ctx.of(-1L);
    for (long n = 1; n <= N; ++n) {
        // Delta(n-1)^(1+e) = Delta(n) solved for e, minus the Diophantine
        // baseline exponent 1.
        BigFloat e = log(gaps.delta(n - 1) / gaps.delta(n)) / log(1L / gaps.delta(n - 1)) - 1L;
        w.per_level.push_back(e);
        if (e > raw_max) raw_max = e;
    }
    if (raw_max > 0L) w.delta_hat = raw_max;

    w.constant_estimate = ctx.of(0L);
    for (long n = 1; n <= N; ++n) {
        BigFloat c = pow(gaps.delta(n - 1), 1L + w.delta_hat) / gaps.delta(n);
        if (c > w.constant_estimate) w.constant_estimate = c;
    }
    return w;
}

BigFloat golden_mean(const PrecisionContext& ctx) {
    return (sqrt(ctx.of(5L)) - 1L) / 2L;
}

BigFloat silver_mean(const PrecisionContext& ctx) {
    return sqrt(ctx.of(2L)) - 1L;
}

}  // namespace circlelab::rotnum
