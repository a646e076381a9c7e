#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <functional>
#include <utility>
#include <vector>

#include "circlelab/circlemap.hpp"
#include "circlelab/conjugacy.hpp"
#include "circlelab/errors.hpp"
#include "circlelab/rng.hpp"
#include "circlelab/rotnum.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace circlelab;
using namespace circlelab::conjugacy;
using circlemap::CircleMapSpec;
using circlemap::iterate_orbit;
using circlemap::OrbitCache;
using testsupport::close;
using testsupport::ctx256;

namespace {

// Sine-family map bisected onto the golden rotation number, together with a
// deep re-measurement of the realized rotation number: conjugacy order checks
// need rho accurate enough that the first N rotation points sort exactly like
// the orbit, and the tuning certificate alone does not reach that depth.
struct TunedGolden {
    CircleMapSpec map;
    BigFloat rho;
};

const TunedGolden& tuned_golden(const PrecisionContext& ctx) {
    static TunedGolden cached = [&] {
        auto fam = CircleMapSpec::sine_family(ctx.of(0.0), ctx.of(0.5));
        auto target = rotnum::cf_expand(rotnum::golden_mean(ctx), 12, ctx);
        BigFloat omega = circlemap::tune_parameter(fam, target, ctx.of(1e-25), ctx);
        CircleMapSpec map = fam.with_omega(omega);
        circlemap::RotationEstimate est = circlemap::rotation_number(map, ctx, 24);
        REQUIRE(est.depth_reached >= 21);
        return TunedGolden{std::move(map), est.cf.rho};
    }();
    return cached;
}

}  // namespace

TEST_CASE("conjugacy samples on a rigid golden orbit are the identity") {
    auto ctx = ctx256();
    BigFloat g = rotnum::golden_mean(ctx);
    auto map = CircleMapSpec::rigid_rotation(g);
    OrbitCache orbit = iterate_orbit(map, ctx.zero(), 1000, ctx);

    ConjugacySamples s = conjugacy_samples(orbit, g);
    REQUIRE(s.depth == 1000);
    REQUIRE(s.pairs.size() == 1000);
    for (size_t k = 0; k < s.pairs.size(); ++k) {
        // phi is built from the same closed-form products as the rigid orbit,
        // so the two columns agree bit for bit.
        CHECK(s.pairs[k].second == s.pairs[k].first);
        if (k > 0) CHECK(s.pairs[k - 1].first < s.pairs[k].first);
    }
}

TEST_CASE("conjugacy samples edge cases") {
    auto ctx = ctx256();
    BigFloat g = rotnum::golden_mean(ctx);
    auto map = CircleMapSpec::rigid_rotation(g);

    SUBCASE("single-point orbit gives the normalized base pair") {
        OrbitCache orbit = iterate_orbit(map, ctx.of(0.37), 1, ctx);
        ConjugacySamples s = conjugacy_samples(orbit, g);
        REQUIRE(s.pairs.size() == 1);
        CHECK(s.pairs[0].first == ctx.of(0.37));
        CHECK(s.pairs[0].second.is_zero());
    }
    SUBCASE("rho outside (0,1) is rejected") {
        OrbitCache orbit = iterate_orbit(map, ctx.zero(), 10, ctx);
        CHECK_THROWS_AS(conjugacy_samples(orbit, ctx.of(0.0)), DomainError);
        CHECK_THROWS_AS(conjugacy_samples(orbit, ctx.of(1.0)), DomainError);
        CHECK_THROWS_AS(conjugacy_samples(orbit, ctx.of(-0.3)), DomainError);
    }
    SUBCASE("a rho with the wrong orbit order is detected") {
        OrbitCache orbit = iterate_orbit(map, ctx.zero(), 200, ctx);
        CHECK_THROWS_AS(conjugacy_samples(orbit, ctx.of(0.3)), CombinatoricsError);
    }
}

TEST_CASE("conjugacy samples for a tuned sine map pass the order check") {
    auto ctx = ctx256();
    const TunedGolden& tg = tuned_golden(ctx);
    OrbitCache orbit = iterate_orbit(tg.map, ctx.zero(), 10'000, ctx);

    ConjugacySamples s = conjugacy_samples(orbit, tg.rho);
    REQUIRE(s.pairs.size() == 10'000);
    for (size_t k = 1; k < s.pairs.size(); ++k) CHECK(s.pairs[k - 1].first < s.pairs[k].first);

    // same orbit against an unrelated rotation number: order mismatch
    CHECK_THROWS_AS(conjugacy_samples(orbit, ctx.of(0.3)), CombinatoricsError);
}

TEST_CASE("density of a rigid rotation is exactly one") {
    auto ctx = ctx256();
    BigFloat g = rotnum::golden_mean(ctx);
    auto map = CircleMapSpec::rigid_rotation(g);
    OrbitCache orbit = iterate_orbit(map, ctx.zero(), 1000, ctx);

    DensityEstimate d = density_estimate(conjugacy_samples(orbit, g));
    REQUIRE(d.h_values.size() == 1000);
    for (const BigFloat& h : d.h_values) CHECK(h == 1L);
    CHECK(d.weighted_mean == 1L);
    CHECK(d.value_near(ctx.of(0.123)) == 1L);
    CHECK(d.value_near(ctx.of(0.999)) == 1L);

    // the transport equation h(x) = T'(x) h(T x) is satisfied identically
    CHECK(homologic_residual(map, d, ctx).is_zero());
}

TEST_CASE("density of a tuned sine map averages to one and transports") {
    auto ctx = ctx256();
    const TunedGolden& tg = tuned_golden(ctx);

    OrbitCache small = iterate_orbit(tg.map, ctx.zero(), 500, ctx);
    DensityEstimate d_small = density_estimate(conjugacy_samples(small, tg.rho));
    OrbitCache large = iterate_orbit(tg.map, ctx.zero(), 4000, ctx);
    DensityEstimate d_large = density_estimate(conjugacy_samples(large, tg.rho));

    // total transported measure is 1 whatever the map; only summation
    // roundoff enters
    CHECK(close(d_small.weighted_mean, ctx.of(1L), ctx.of(1e-60)));
    CHECK(close(d_large.weighted_mean, ctx.of(1L), ctx.of(1e-60)));
    CHECK(d_large.value_near(ctx.of(0.5)) > 0L);

    // the homologic residual shrinks as the orbit refines, as long as the
    // rotation-number measurement error stays below the resolution error
    // (beyond a few thousand points it no longer does, and the residual
    // saturates at the phi-gap error N^2 * |rho error|)
    BigFloat r_small = homologic_residual(tg.map, d_small, ctx);
    BigFloat r_large = homologic_residual(tg.map, d_large, ctx);
    CHECK(r_small < ctx.of(0.02));
    CHECK(r_large < r_small);
    CHECK(r_large < ctx.of(1e-3));
}

TEST_CASE("density estimate input validation") {
    auto ctx = ctx256();
    BigFloat g = rotnum::golden_mean(ctx);
    auto map = CircleMapSpec::rigid_rotation(g);
    OrbitCache orbit = iterate_orbit(map, ctx.zero(), 2, ctx);
    ConjugacySamples s = conjugacy_samples(orbit, g);
    CHECK_THROWS_AS(density_estimate(s), DomainError);
}

namespace {

std::vector<std::pair<BigFloat, BigFloat>> equispaced_signal(
    long n, const PrecisionContext& ctx,
    const std::function<BigFloat(const BigFloat&)>& f) {
    std::vector<std::pair<BigFloat, BigFloat>> v;
    v.reserve(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) {
        BigFloat x = BigFloat(i, ctx.bits) / BigFloat(n, 64);
        BigFloat y = f(x);
        v.push_back({std::move(x), std::move(y)});
    }
    return v;
}

}  // namespace

TEST_CASE("holder exponent: Lipschitz and constant signals hit the cap") {
    auto ctx = ctx256();

    SUBCASE("constant signal: zero oscillation at every scale") {
        auto v = equispaced_signal(8192, ctx, [&](const BigFloat&) { return ctx.of(5.0); });
        auto scales = default_holder_scales(v);
        RegularityEstimate r = holder_exponent(v, scales.first, scales.second);
        CHECK(r.exponent == 1L);
        CHECK(r.cap_hit);
    }
    SUBCASE("identity signal on random points: slope one") {
        SampleRng rng(42);
        std::vector<std::pair<BigFloat, BigFloat>> v;
        for (long i = 0; i < 8192; ++i) {
            BigFloat x(rng.uniform(), 64);
            v.push_back({x, x});
        }
        auto scales = default_holder_scales(v);
        CHECK(scales.second / scales.first >= 100L);
        RegularityEstimate r = holder_exponent(v, scales.first, scales.second);
        CHECK(r.cap_hit);
        CHECK(close(r.exponent, ctx.of(1.0), ctx.of(0.05)));
    }
    SUBCASE("the small worked examples pass with explicit scales") {
        SampleRng rng(7);
        std::vector<std::pair<BigFloat, BigFloat>> idv, cv;
        for (long i = 0; i < 1000; ++i) {
            BigFloat x(rng.uniform(), 64);
            idv.push_back({x, x});
            cv.push_back({x, BigFloat(2.5, 64)});
        }
        RegularityEstimate ri = holder_exponent(idv, ctx.of(1e-3), ctx.of(0.125));
        CHECK(ri.cap_hit);
        CHECK(close(ri.exponent, ctx.of(1.0), ctx.of(0.1)));
        RegularityEstimate rc = holder_exponent(cv, ctx.of(1e-3), ctx.of(0.125));
        CHECK(rc.exponent == 1L);
        CHECK(rc.cap_hit);
    }
}

TEST_CASE("holder exponent calibration on lacunar cosine signals") {
    auto ctx = ctx256();
    for (double beta : {0.3, 0.5, 0.7}) {
        CAPTURE(beta);
        auto v = equispaced_signal(8192, ctx, [&](const BigFloat& x) {
            return circlemap::perturbation_jet(ctx.of(beta), 2, 24, x, 256).d3;
        });
        auto scales = default_holder_scales(v);
        RegularityEstimate r = holder_exponent(v, scales.first, scales.second);
        CHECK_FALSE(r.cap_hit);
        CHECK(close(r.exponent, ctx.of(beta), ctx.of(0.1)));
        CHECK(r.fit.points.size() >= 4);
    }
}

TEST_CASE("holder exponent input validation") {
    auto ctx = ctx256();
    auto v = equispaced_signal(999, ctx, [](const BigFloat& x) { return x; });
    CHECK_THROWS_AS(holder_exponent(v, ctx.of(1e-3), ctx.of(0.125)), DomainError);

    auto v2 = equispaced_signal(2000, ctx, [](const BigFloat& x) { return x; });
    // window spans less than two decades
    CHECK_THROWS_AS(holder_exponent(v2, ctx.of(1e-2), ctx.of(0.5)), DomainError);
    CHECK_THROWS_AS(holder_exponent(v2, ctx.of(0.0), ctx.of(0.125)), DomainError);
    CHECK_THROWS_AS(holder_exponent(v2, ctx.of(0.125), ctx.of(1e-3)), DomainError);
}

TEST_CASE("exponent schedule worked examples are exact rationals") {
    SUBCASE("beta 1/5, delta 1/2: one step to the cap") {
        ExponentSchedule s = exponent_schedule(mpq_class(1, 5), mpq_class(1, 2));
        REQUIRE(s.sigmas.size() == 2);
        CHECK(s.sigmas[0] == 1);
        CHECK(s.sigmas[1] == mpq_class(6, 5));
        CHECK(s.steps_to_fixpoint == 1);
    }
    SUBCASE("beta 1/2, delta 9/10: eight doubling steps") {
        ExponentSchedule s = exponent_schedule(mpq_class(1, 2), mpq_class(9, 10));
        REQUIRE(s.sigmas.size() == 9);
        CHECK(s.steps_to_fixpoint == 8);
        CHECK(s.sigmas.back() == mpq_class(3, 2));
        // interior entries follow the closed form (2/(1+delta))^i
        mpq_class factor(20, 19);
        mpq_class power = 1;
        for (size_t i = 0; i + 1 < s.sigmas.size(); ++i) {
            CHECK(s.sigmas[i] == power);
            power *= factor;
        }
        for (size_t i = 1; i < s.sigmas.size(); ++i) CHECK(s.sigmas[i] > s.sigmas[i - 1]);
    }
    SUBCASE("beta 9/10, delta 19/20: twenty-six steps") {
        ExponentSchedule s = exponent_schedule(mpq_class(9, 10), mpq_class(19, 20));
        CHECK(s.steps_to_fixpoint == 26);
        CHECK(s.sigmas.back() == mpq_class(19, 10));
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(exponent_schedule(mpq_class(1, 2), mpq_class(1, 2)), DomainError);
        CHECK_THROWS_AS(exponent_schedule(mpq_class(3, 4), mpq_class(1, 2)), DomainError);
        CHECK_THROWS_AS(exponent_schedule(mpq_class(0), mpq_class(1, 2)), DomainError);
        CHECK_THROWS_AS(exponent_schedule(mpq_class(1, 5), mpq_class(1)), DomainError);
    }
}

TEST_CASE("predicted regularity pair is exact and respects the open strip") {
    RegularityPrediction p = predicted_regularity(mpq_class(16, 5), mpq_class(1, 2));
    CHECK(p.conjugacy_exponent == mpq_class(17, 10));
    CHECK(p.density_exponent == mpq_class(7, 10));

    RegularityPrediction p2 = predicted_regularity(mpq_class(39, 10), mpq_class(19, 20));
    CHECK(p2.conjugacy_exponent == mpq_class(39, 20));
    CHECK(p2.density_exponent == mpq_class(19, 20));

    // boundary and parameter violations
    CHECK_THROWS_AS(predicted_regularity(mpq_class(5, 2), mpq_class(1, 2)), DomainError);
    CHECK_THROWS_AS(predicted_regularity(mpq_class(7, 2), mpq_class(1, 2)), DomainError);
    CHECK_THROWS_AS(predicted_regularity(mpq_class(4), mpq_class(1, 2)), DomainError);
    CHECK_THROWS_AS(predicted_regularity(mpq_class(3), mpq_class(0)), DomainError);
    CHECK_THROWS_AS(predicted_regularity(mpq_class(4), mpq_class(1)), DomainError);
}
