#pragma once

#include <vector>

#include "circlelab/bigfloat.hpp"
#include "circlelab/rotnum.hpp"
#include "circlelab/smooth_map.hpp"

namespace circlelab::circlemap {

enum class Family { RigidRotation, SineFamily, WeierstrassFamily };

// 3-jet of the perturbation series s(x) = sum_{k=1..terms} lambda^(-k(3+beta))
// sin(2 pi lambda^k x) at working precision wp. The third derivative of s is
// a Weierstrass-type cosine series with Hoelder exponent beta; it doubles as
// the calibration signal for the regularity estimator.
Jet perturbation_jet(const BigFloat& beta, long lambda, long terms, const BigFloat& x,
                     mpfr_prec_t wp);

// Orientation-preserving circle diffeomorphism given by an explicit lift
// L(x) = x + Omega + coupling * (family-specific periodic part). Immutable
// after construction; all validation happens here, never at evaluation time.
class CircleMapSpec {
  public:
    static CircleMapSpec rigid_rotation(const BigFloat& omega);
    static CircleMapSpec sine_family(const BigFloat& omega, const BigFloat& a);
    static CircleMapSpec weierstrass_family(const BigFloat& omega, const BigFloat& a,
                                            const BigFloat& beta, long lambda = 2,
                                            long terms = 24);
    // Largest safe coupling scale: 0.5 / (2 pi sum lambda^(-k(2+beta))), so
    // that a * sup|s'| <= 0.5.
    static BigFloat weierstrass_default_coupling(const BigFloat& beta, long lambda, long terms,
                                                 mpfr_prec_t prec);

    Family family() const { return family_; }
    const BigFloat& omega() const { return omega_; }
    const BigFloat& coupling() const { return a_; }
    const BigFloat& holder_beta() const { return beta_; }
    long lambda() const { return lambda_; }
    long terms() const { return terms_; }

    // Same family and parameters with a different rotation offset (used by
    // the tuning bisection).
    CircleMapSpec with_omega(const BigFloat& omega) const;

    // Unreduced lift value; monotone increasing, L(x+1) = L(x) + 1.
    BigFloat lift(const BigFloat& x) const;
    // Lift value and derivatives d1..d3 (derivatives are 1-periodic).
    Jet lift_jet(const BigFloat& x) const;
    // One application of the circle map: lift reduced mod 1.
    BigFloat apply(const BigFloat& x) const { return wrap_unit(lift(x)); }

    mpfr_prec_t param_precision() const;

  private:
    CircleMapSpec(Family f, BigFloat omega, BigFloat a, BigFloat beta, long lambda, long terms);
    Family family_;
    BigFloat omega_, a_, beta_;
    long lambda_ = 0, terms_ = 0;
};

// Jet of the map at a canonical circle point: value reduced to [0,1),
// derivatives of the lift.
struct JetValue {
    BigFloat x;   // canonicalized input
    BigFloat f;   // T(x) in [0,1)
    BigFloat f1;  // > 0
    BigFloat f2;
    BigFloat f3;
};

JetValue eval_jet(const CircleMapSpec& map, const BigFloat& x, const PrecisionContext& ctx);

// Schwarzian derivative of the map at x (0 for rigid rotations).
BigFloat schwarzian(const CircleMapSpec& map, const BigFloat& x, const PrecisionContext& ctx);

// The lift of T^steps as a SmoothMap on lift coordinates (jets by the chain
// rule along the finite orbit). steps = 0 is the identity. Each evaluation
// costs `steps` composed jets, and callers such as the chart identity checks
// probe the same few marked points repeatedly, so a short per-instance memo
// replays those bitwise; once it is full, further points are computed as
// usual.
class IteratedLift : public SmoothMap {
  public:
    IteratedLift(const CircleMapSpec& map, long steps);
    Jet jet_at(const BigFloat& x) const override;

  private:
    const CircleMapSpec& map_;
    long steps_;
    mutable std::vector<std::pair<BigFloat, Jet>> memo_;
};

// Forward orbit x, Tx, ..., T^(N-1)x at the context's working precision.
struct OrbitCache {
    CircleMapSpec map;
    BigFloat seed;
    std::vector<BigFloat> pts;
    mpfr_prec_t prec;

    long size() const { return static_cast<long>(pts.size()); }
    const BigFloat& operator[](long i) const { return pts.at(static_cast<size_t>(i)); }
};

inline constexpr long kDefaultOrbitBudget = 2'000'000;

OrbitCache iterate_orbit(const CircleMapSpec& map, const BigFloat& seed, long n,
                         const PrecisionContext& ctx, long max_points = kDefaultOrbitBudget);

// One closest return: at time q the orbit point T^q(seed) is nearer to the
// seed (circle metric) than at any earlier time; winding is the integer part
// p of the lift displacement, side the sign of q*rho - p.
struct ReturnRecord {
    long time;
    mpz_class winding;
    int side;
};

std::vector<ReturnRecord> closest_returns(const CircleMapSpec& map, const BigFloat& seed,
                                          long max_iter, const PrecisionContext& ctx);

// Rotation number recovered from closest-return times: the quotient ladder
// is rebuilt from the return times, rho is bracketed by the last two
// convergents and reported as an interior point of that bracket whose own
// expansion repeats the observed quotients.
struct RotationEstimate {
    BigFloat rho;
    rotnum::ContinuedFraction cf;
    BigFloat bracket_width;  // 1/(q_(N-1) q_N) at the deepest level found
    long depth_reached;
};

RotationEstimate rotation_number(const CircleMapSpec& map, const PrecisionContext& ctx,
                                 long target_depth, long max_iter = 500'000);
RotationEstimate rotation_number(const CircleMapSpec& map, const BigFloat& seed,
                                 const PrecisionContext& ctx, long target_depth,
                                 long max_iter = 500'000);

// Mode-locking interval of rho = p/q in the family parameter omega, mapped
// by bisection on the multi-seed displacement straddle predicate.
struct TongueReport {
    mpz_class p, q;
    BigFloat lo, hi;
};

TongueReport map_tongue(const CircleMapSpec& family, const mpz_class& p, const mpz_class& q,
                        const BigFloat& omega_tol, const PrecisionContext& ctx);

// Thrown by tune_parameter when the target is (or collapses onto) a rational
// plateau: carries the mapped locking interval.
struct ModeLockedError : std::runtime_error {
    TongueReport tongue;
    explicit ModeLockedError(TongueReport t)
        : std::runtime_error("rotation number mode-locked at " + t.p.get_str() + "/" +
                             t.q.get_str() + " across the probe bracket"),
          tongue(std::move(t)) {}
};

// Certificate attached to a tuned parameter. matched_depth counts target
// quotients certified at the returned omega; cylinder_width is the rho-width
// 1/(q_m q_(m+1)) of that certified cylinder — the honest resolution limit
// of any finite-orbit tuning. omega_bracket is the final bisection bracket.
struct TuneResult {
    BigFloat omega;
    BigFloat omega_bracket;
    long matched_depth;
    BigFloat cylinder_width;
    rotnum::ContinuedFraction realized;
};

TuneResult tune_parameter_report(const CircleMapSpec& family, const rotnum::ContinuedFraction& target,
                                 const BigFloat& tol, const PrecisionContext& ctx,
                                 long probe_budget = 200'000);

// Spec'd entry point: just the tuned omega.
BigFloat tune_parameter(const CircleMapSpec& family, const rotnum::ContinuedFraction& target,
                        const BigFloat& tol, const PrecisionContext& ctx,
                        long probe_budget = 200'000);

}  // namespace circlelab::circlemap
