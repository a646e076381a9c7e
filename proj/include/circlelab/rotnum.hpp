#pragma once

#include <gmpxx.h>

#include <vector>

#include "circlelab/bigfloat.hpp"

namespace circlelab::rotnum {

// Continued-fraction expansion rho = 1/(k1 + 1/(k2 + ...)) of a number in
// (0,1), together with the convergent tables p_n/q_n. Index convention:
// p(-1)=1, q(-1)=0, p(0)=0, q(0)=1, and p(n) = k_n p(n-1) + p(n-2) (same for
// q), so p(n)/q(n) -> rho. Quotients are stored 1-based: quotients[0] = k_1.
struct ContinuedFraction {
    BigFloat rho;
    std::vector<mpz_class> quotients;
    bool rational_termination = false;  // expansion ended on an (almost) exact rational

    long depth() const { return static_cast<long>(quotients.size()); }
    const mpz_class& p(long n) const { return p_.at(static_cast<size_t>(n + 1)); }
    const mpz_class& q(long n) const { return q_.at(static_cast<size_t>(n + 1)); }

    // p(n)/q(n) rounded to ctx precision.
    BigFloat convergent(long n, const PrecisionContext& ctx) const;

    // Called by the builders below; verifies the determinant identity
    // q(n+1) p(n) - q(n) p(n+1) = (-1)^n and coprimality at every level.
    void rebuild_tables();

    std::vector<mpz_class> p_, q_;  // shifted by one: p_[0] = p(-1)
};

// Expansion by repeated reciprocal-and-floor at ctx precision. Terminates
// early (setting rational_termination) when the fractional remainder is
// within 16 eps of 0 or of 1, i.e. when the input is indistinguishable from
// a rational at this precision. pre: 0 < rho < 1.
ContinuedFraction cf_expand(const BigFloat& rho, long depth, const PrecisionContext& ctx);

// Finite continued fraction from explicit quotients (all >= 1). A trailing
// quotient of 1 is rejected beyond depth 1 so that expansions are canonical
// and round-trip. The value p_N/q_N is computed exactly and rounded once.
ContinuedFraction from_quotients(const std::vector<mpz_class>& ks, const PrecisionContext& ctx);

// Gap sequence Delta_n = |q(n) rho - p(n)|, the distance from q(n) rho to
// the nearest integer along the convergent ladder, with Delta(-1) = 1.
// Checked at construction: positive and strictly decreasing.
struct GapSequence {
    BigFloat rho;
    long max_level() const { return static_cast<long>(deltas_.size()) - 2; }
    const BigFloat& delta(long n) const { return deltas_.at(static_cast<size_t>(n + 1)); }

    std::vector<BigFloat> deltas_;  // deltas_[0] = Delta(-1) = 1
};

GapSequence gap_sequence(const ContinuedFraction& cf, const PrecisionContext& ctx);

// Empirical Diophantine exponent: the smallest delta >= 0 such that
// Delta(n-1)^(1+delta) <= C Delta(n) over the observed levels, with the
// per-level raw exponents and the accompanying constant.
struct DiophantineWitness {
    BigFloat delta_hat;
    std::vector<BigFloat> per_level;  // entry n-1 covers the (n-1,n) pair, n >= 1
    BigFloat constant_estimate;
    long depth;
};

DiophantineWitness diophantine_estimate(const GapSequence& gaps, const PrecisionContext& ctx);

// (sqrt(5)-1)/2 = [1,1,1,...]
BigFloat golden_mean(const PrecisionContext& ctx);
// sqrt(2)-1 = [2,2,2,...]
BigFloat silver_mean(const PrecisionContext& ctx);

}  // namespace circlelab::rotnum
