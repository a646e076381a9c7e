// Acceptance gate: one self-contained check per release criterion, each
// printed as a single PASS/FAIL line with its wall-clock budget. The process
// exits with the number of failed criteria, so a zero exit means the whole
// gate is green.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "circlelab/circlemap.hpp"
#include "circlelab/conjugacy.hpp"
#include "circlelab/crossratio.hpp"
#include "circlelab/renorm.hpp"
#include "circlelab/report.hpp"
#include "circlelab/rng.hpp"
#include "circlelab/rotnum.hpp"
#include "support.hpp"

using namespace circlelab;
namespace fs = std::filesystem;

namespace {

struct CriterionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& msg) {
    if (!ok) throw CriterionFailure(msg);
}

std::string short_dec(const BigFloat& x) { return x.to_decimal(3); }

// The nonlinear criteria share one sine map locked onto the golden mean.
// Tuning depth 20 leaves the realized rotation number within ~1e-11 of its
// own certified bracket, which is what the density criterion needs: at 8192
// orbit points a coarser lock visibly bends the regularity fit.
struct TunedGolden {
    circlemap::CircleMapSpec map;
    circlemap::RotationEstimate est;
};

const TunedGolden& tuned_golden(const PrecisionContext& ctx) {
    static std::optional<TunedGolden> cache;
    if (!cache) {
        BigFloat golden = rotnum::golden_mean(ctx);
        auto family = circlemap::CircleMapSpec::sine_family(golden, ctx.of(0.5));
        auto target = rotnum::cf_expand(golden, 20, ctx);
        BigFloat omega = circlemap::tune_parameter(family, target, ctx.parse("1e-40"), ctx);
        auto map = family.with_omega(omega);
        auto est = circlemap::rotation_number(map, ctx, 30, 4'400'000);
        cache = TunedGolden{std::move(map), std::move(est)};
    }
    return *cache;
}

// --- criterion 1: exact identity batteries on random analytic maps --------

std::string criterion_identity_batteries() {
    auto ctx = PrecisionContext::make(256);
    const BigFloat tol_unit = ctx.of(64L) * ctx.eps();
    const BigFloat ceiling = ctx.parse("1e-60");
    const long want = 1000;

    BigFloat worst = ctx.zero();
    auto enforce = [&](const char* name, const BigFloat& res, const BigFloat& scale) {
        if (res > tol_unit * scale || res > ceiling)
            throw CriterionFailure(std::string(name) + " residual " + short_dec(res) +
                                   " breaks 64*eps*" + short_dec(scale) + " / 1e-60");
        worst = max(worst, res);
    };

    // Pointwise identities: fresh random sine map and window per instance.
    SampleRng rng(11);
    for (long i = 0; i < want; ++i) {
        auto map = circlemap::CircleMapSpec::sine_family(
            ctx.of(0.05 + 0.9 * rng.uniform()), ctx.of(0.05 + 0.9 * rng.uniform()));
        circlemap::IteratedLift lift1(map, 1), lift2(map, 2);
        double base = rng.uniform(), w = 0.01 + 0.04 * rng.uniform();
        BigFloat x[4];
        for (int k = 0; k < 4; ++k) x[k] = ctx.of(base + w * ((k + 0.8 * rng.uniform()) / 4.0));

        BigFloat rel = abs(crossratio::exact_relation_check(x[0], x[1], x[2], lift1));
        BigFloat d = abs(crossratio::ratio_distortion(x[0], x[1], x[2], lift1).value);
        enforce("exact-relation", rel, ctx.of(1L) + d + d);

        crossratio::Quad quad{x[0], x[1], x[2], x[3]};
        auto mult = crossratio::check_multiplicativity(quad, lift1, lift1);
        BigFloat d2 = abs(crossratio::ratio_distortion(x[0], x[1], x[2], lift2).value);
        BigFloat dist2 = abs(crossratio::cross_ratio_distortion(quad, lift2).value);
        enforce("ratio-composition", mult.ratio_law, ctx.of(1L) + d2 + d2);
        enforce("cross-ratio-composition", mult.cross_ratio_law, ctx.of(1L) + dist2 + dist2);

        BigFloat lhs = crossratio::cross_ratio_distortion(quad, lift1).value;
        BigFloat rhs = crossratio::ratio_distortion(x[0], x[1], x[2], lift1).value /
                       crossratio::ratio_distortion(x[0], x[3], x[2], lift1).value;
        enforce("factorization", abs(lhs - rhs), ctx.of(1L) + abs(lhs) + abs(rhs));
    }

    // Partition identities: random maps, and for each map several random
    // marked points. Every (map, marked point, level) triple with level in
    // 2..10 contributes one instance of each chart identity and one of the
    // two-path sum; the rotation number is measured once per map.
    SampleRng mrng(23);
    long level_instances = 0, maps_used = 0, maps_skipped = 0, attempts = 0;
    while (level_instances < want) {
        require(++attempts <= 400, "could not assemble 1000 partition instances");
        auto map = circlemap::CircleMapSpec::sine_family(
            ctx.of(0.05 + 0.9 * mrng.uniform()), ctx.of(0.05 + 0.7 * mrng.uniform()));
        try {
            auto est = circlemap::rotation_number(map, ctx, 12, 60'000);
            long top = std::min(10L, est.depth_reached - 2);
            long need = 0;
            while (top >= 2) {
                if (est.cf.q(top + 1).fits_slong_p()) {
                    need = est.cf.q(top + 1).get_si() + est.cf.q(top).get_si() + 1;
                    if (need <= 16'000) break;
                }
                --top;
            }
            if (top < 2) {
                ++maps_skipped;
                continue;
            }
            bool used = false;
            for (int s = 0; s < 7 && level_instances < want; ++s) {
                auto orbit = std::make_shared<const circlemap::OrbitCache>(circlemap::iterate_orbit(
                    map, ctx.of(mrng.uniform()), need, ctx.guard()));
                std::vector<renorm::DynamicalPartition> parts;
                for (long n = 1; n <= top + 1; ++n)
                    parts.push_back(renorm::build_partition(orbit, est.cf, n, ctx));
                auto density =
                    conjugacy::density_estimate(conjugacy::conjugacy_samples(*orbit, est.rho));
                for (long n = 2; n <= top; ++n) {
                    auto ids = renorm::exact_identities_check(
                        map, parts[static_cast<size_t>(n - 2)], parts[static_cast<size_t>(n - 1)],
                        parts[static_cast<size_t>(n)], ctx);
                    enforce("chart-identity-1", ids.observ1, ids.observ1_scale);
                    enforce("chart-identity-2", ids.observ2, ids.observ2_scale);
                    enforce("chart-identity-3", ids.observ3, ids.observ3_scale);
                    auto sums =
                        renorm::schwarz_sums(map, parts[static_cast<size_t>(n - 1)], density, ctx);
                    enforce("two-path-sum", sums.two_path_residual,
                            BigFloat(parts[static_cast<size_t>(n - 1)].points(), ctx.bits));
                    ++level_instances;
                }
                used = true;
            }
            used ? ++maps_used : ++maps_skipped;
        } catch (const PeriodicOrbitError&) {
            ++maps_skipped;
        } catch (const CombinatoricsError&) {
            ++maps_skipped;
        }
    }

    std::ostringstream os;
    os << want << " pointwise instances x 4 identities and " << level_instances
       << " level instances x 4 identities (" << maps_used << " maps, " << maps_skipped
       << " skipped), max residual " << short_dec(worst);
    return os.str();
}

// --- criterion 2: rigid rotations are exactly neutral ---------------------

std::string criterion_rigid_exactness() {
    auto ctx = PrecisionContext::make(256);
    const BigFloat tol16 = ctx.of(16L) * ctx.eps();
    BigFloat golden = rotnum::golden_mean(ctx);
    auto map = circlemap::CircleMapSpec::rigid_rotation(golden);
    auto est = circlemap::rotation_number(map, ctx, 14);

    auto dj = renorm::denjoy_scan(map, est.cf, 10, 32, ctx);
    require(dj.deviation_vanishes, "rigid derivative deviation did not vanish");
    for (const auto& row : dj.per_level)
        require(row.sup_dev.is_zero(), "rigid sup|(T^q)'-1| nonzero at level " +
                                           std::to_string(row.level));

    long need = est.cf.q(9).get_si() + est.cf.q(8).get_si() + 1;
    auto orbit = std::make_shared<const circlemap::OrbitCache>(
        circlemap::iterate_orbit(map, ctx.zero(), need, ctx.guard()));
    std::vector<renorm::DynamicalPartition> parts;
    for (long n = 1; n <= 9; ++n) parts.push_back(renorm::build_partition(orbit, est.cf, n, ctx));
    // the rotation number of a rigid rotation is its own parameter, so the
    // conjugacy is paired against the exact value, not the measured bracket
    auto density = conjugacy::density_estimate(conjugacy::conjugacy_samples(*orbit, golden));
    for (const BigFloat& h : density.h_values)
        require(abs(h - 1L) <= tol16, "rigid density leaves h = 1");

    for (long n = 2; n <= 8; ++n) {
        auto ids = renorm::exact_identities_check(map, parts[static_cast<size_t>(n - 2)],
                                                  parts[static_cast<size_t>(n - 1)],
                                                  parts[static_cast<size_t>(n)], ctx);
        require(ids.observ1.is_zero() && ids.observ2.is_zero() && ids.observ3.is_zero(),
                "rigid chart identities left rounding residue at level " + std::to_string(n));
        auto s = renorm::schwarz_sums(map, parts[static_cast<size_t>(n - 1)], density, ctx);
        require(s.p_sum.is_zero() && s.pbar_sum.is_zero() && s.two_path_residual.is_zero(),
                "rigid orbit sums nonzero at level " + std::to_string(n));
    }

    BigFloat mk_worst = ctx.zero();
    for (long n = 3; n <= 6; ++n) {
        auto mk = renorm::mk_functions(map, parts[static_cast<size_t>(n - 1)], 16, ctx);
        for (const auto& [xi, v] : mk.m_samples) mk_worst = max(mk_worst, abs(v - 1L));
        for (const auto& [xi, v] : mk.k_samples) mk_worst = max(mk_worst, abs(v - 1L));
        mk_worst = max(mk_worst, abs(mk.m_n - 1L));
        require(mk_worst <= tol16, "rigid renormalization distortions leave 1");
    }

    SampleRng rng(17);
    BigFloat pt_worst = ctx.zero();
    for (int i = 0; i < 200; ++i) {
        auto p = testsupport::separated_points(rng, ctx, 4, 0.01, 0.99, 0.05);
        std::sort(p.begin(), p.end());
        circlemap::IteratedLift lift(map, 1);
        pt_worst = max(pt_worst, abs(crossratio::ratio_distortion(p[0], p[1], p[2], lift).value - 1L));
        pt_worst = max(pt_worst,
                       abs(crossratio::cross_ratio_distortion({p[0], p[1], p[2], p[3]}, lift).value - 1L));
        Jet j = lift.jet_at(p[0]);
        require(j.d2.is_zero() && j.d3.is_zero(), "rigid jets have curvature");
        require(pt_worst <= tol16, "rigid distortions leave 1 beyond 16*eps");
    }

    std::ostringstream os;
    os << "levels <= 10 exact (orbit sums, chart identities, derivative deviation all zero); "
          "distortions and density within 16*eps (max "
       << short_dec(max(mk_worst, pt_worst)) << ")";
    return os.str();
}

// --- criterion 3: moebius maps are distortion-neutral ---------------------

std::string criterion_moebius_neutrality() {
    auto ctx = PrecisionContext::make(256);
    const BigFloat tol = ctx.of(64L) * ctx.eps();
    SampleRng rng(31);
    BigFloat worst_dist = ctx.zero(), worst_exp = ctx.zero();
    for (int i = 0; i < 1000; ++i) {
        // near-identity coefficients keep the derivative close to 1, so the
        // flat 64*eps budget of the well-separated probes applies
        MobiusMap mob(ctx.of(1L), ctx.of(-0.2 + 0.4 * rng.uniform()),
                      ctx.of(-0.05 + 0.1 * rng.uniform()), ctx.of(1L));
        auto p = testsupport::separated_points(rng, ctx, 4, 0.01, 0.99, 0.2);
        crossratio::Quad q{p[0], p[1], p[2], p[3]};
        worst_dist = max(worst_dist, abs(crossratio::cross_ratio_distortion(q, mob).value - 1L));
        require(worst_dist <= tol, "moebius cross-ratio distortion left 1");

        std::sort(p.begin(), p.end());
        crossratio::Quad w{p[0], p[1], p[3], p[2]};  // inner points between outer
        auto r = crossratio::dist_expansion_residual(w, p[1], mob);
        worst_exp = max(worst_exp, abs(r.residual));
        require(worst_exp <= tol, "moebius log-distortion expansion residual nonzero");
    }
    std::ostringstream os;
    os << "1000 random quads: |Dist-1| max " << short_dec(worst_dist)
       << ", expansion residual max " << short_dec(worst_exp) << " (both <= 64*eps)";
    return os.str();
}

// --- criterion 4: expansion residual decay rates --------------------------

std::string criterion_expansion_rates() {
    auto ctx = PrecisionContext::make(256);
    BigFloat golden = rotnum::golden_mean(ctx);

    auto sine = circlemap::CircleMapSpec::sine_family(golden, ctx.of(0.5));
    circlemap::IteratedLift sl(sine, 1);
    BigFloat xi = ctx.of(0.1338);
    double dr_sine = crossratio::fit_sweep_slope(
                         crossratio::dr_expansion_sweep(sl, xi, 1e-5, 1e-2, ctx))
                         .slope.to_double();
    double dist_sine = crossratio::fit_sweep_slope(
                           crossratio::dist_expansion_sweep(sl, xi, 1e-5, 1e-2, ctx))
                           .slope.to_double();
    require(std::abs(dr_sine - 2.0) <= 0.3, "analytic triple-probe slope off 2");
    require(std::abs(dist_sine - 2.0) <= 0.3, "analytic quad-probe slope off 2");

    BigFloat beta = ctx.of(0.5);
    BigFloat a = circlemap::CircleMapSpec::weierstrass_default_coupling(beta, 2, 24, 256) / 2L;
    auto rough = circlemap::CircleMapSpec::weierstrass_family(golden, a, beta, 2, 24);
    circlemap::IteratedLift rl(rough, 1);
    // the slope at a single base point inherits the oscillation of the
    // lacunar series, so the fit pools a handful of random base points
    SampleRng rng(7);
    crossratio::Sweep dr_all, dist_all;
    for (int i = 0; i < 6; ++i) {
        BigFloat base = ctx.of(rng.uniform());
        auto dr = crossratio::dr_expansion_sweep(rl, base, 1e-5, 1e-2, ctx);
        auto di = crossratio::dist_expansion_sweep(rl, base, 1e-5, 1e-2, ctx);
        dr_all.insert(dr_all.end(), dr.begin(), dr.end());
        dist_all.insert(dist_all.end(), di.begin(), di.end());
    }
    double dr_rough = crossratio::fit_sweep_slope(dr_all).slope.to_double();
    double dist_rough = crossratio::fit_sweep_slope(dist_all).slope.to_double();
    require(std::abs(dr_rough - 1.5) <= 0.3, "rough triple-probe slope off 1.5");
    require(std::abs(dist_rough - 1.5) <= 0.3, "rough quad-probe slope off 1.5");

    std::ostringstream os;
    os << "analytic slopes " << dr_sine << "/" << dist_sine << " (2 +/- 0.3), rough slopes "
       << dr_rough << "/" << dist_rough << " (1.5 +/- 0.3)";
    return os.str();
}

// --- criterion 5: metallic-mean closed forms ------------------------------

std::string criterion_metallic_closed_forms() {
    auto ctx = PrecisionContext::make(256);
    struct Case {
        const char* name;
        BigFloat mean;
        long quotient;
    };
    std::vector<Case> cases = {{"golden", rotnum::golden_mean(ctx), 1},
                               {"silver", rotnum::silver_mean(ctx), 2}};
    for (const Case& c : cases) {
        auto cf = rotnum::cf_expand(c.mean, 25, ctx);
        require(cf.depth() >= 25, std::string(c.name) + ": expansion stopped early");
        for (long n = 1; n <= 25; ++n)
            require(cf.quotients[static_cast<size_t>(n - 1)] == c.quotient,
                    std::string(c.name) + ": quotient " + std::to_string(n) + " wrong");

        // denominators from the two-term recurrence, run independently in mpz
        mpz_class qm1 = 0, q0 = 1, pm1 = 1, p0 = 0;
        for (long n = 1; n <= 25; ++n) {
            mpz_class qn = c.quotient * q0 + qm1, pn = c.quotient * p0 + pm1;
            require(qn == cf.q(n) && pn == cf.p(n),
                    std::string(c.name) + ": convergent tables diverge at " + std::to_string(n));
            // determinant identity p(n-1) q(n) - p(n) q(n-1) = (-1)^n,
            // exactly, in integers
            mpz_class det = p0 * qn - pn * q0;
            require(det == ((n % 2 == 0) ? mpz_class(1) : mpz_class(-1)),
                    std::string(c.name) + ": determinant identity broken at " + std::to_string(n));
            qm1 = q0; q0 = qn; pm1 = p0; p0 = pn;
        }

        // gap closed form Delta_n = mean^(n+1) to full working precision
        auto gaps = rotnum::gap_sequence(cf, ctx);
        for (long n = 0; n <= 24; ++n) {
            BigFloat expect = pow(c.mean, ctx.of(n + 1));
            BigFloat tol = ctx.of(64L) * ctx.eps() * (ctx.of(1L) + ctx.of(mpq_class(cf.q(n + 1))));
            require(abs(gaps.delta(n) - expect) <= tol,
                    std::string(c.name) + ": gap closed form off at level " + std::to_string(n));
        }
    }
    return "golden and silver: quotients, Fibonacci/Pell tables, determinant identity and "
           "gap powers exact through level 25";
}

// --- criterion 6: derivative deviation decay on the tuned map -------------

std::string criterion_tuned_deviation_decay() {
    auto ctx = PrecisionContext::make(256);
    const TunedGolden& tg = tuned_golden(ctx);
    require(tg.est.depth_reached >= 16, "tuned map certified too shallow");
    require(tg.est.cf.q(13) == 377, "q_13 of the tuned map is not 377");

    auto dj = renorm::denjoy_scan(tg.map, tg.est.cf, 14, 64, ctx);
    require(!dj.deviation_vanishes, "nonlinear map scanned as rigid");
    double nu = dj.fitted_nu.slope.to_double();
    require(nu >= 0.8, "fitted deviation exponent " + std::to_string(nu) + " < 0.8");
    for (size_t i = 0; i < dj.per_level.size(); ++i) {
        const auto& row = dj.per_level[i];
        if (row.level >= 5)
            require(row.sup_dev < dj.per_level[i - 1].sup_dev,
                    "sup deviation not monotone at level " + std::to_string(row.level));
    }
    std::ostringstream os;
    os << "levels 3..14 at 64 samples: fitted nu " << nu
       << " >= 0.8, sup deviation strictly decreasing beyond level 4";
    return os.str();
}

// --- criterion 7: orbit-sum decay against the gap sequence ----------------

std::string criterion_orbit_sum_decay() {
    auto ctx = PrecisionContext::make(256);
    const TunedGolden& tg = tuned_golden(ctx);
    auto survey = renorm::survey_levels(tg.map, tg.est.cf, 2, 12, 48, 2000, ctx);
    require(survey.rows.front().level == 2 && survey.rows.back().level == 12,
            "survey did not cover levels 2..12");
    double slope = survey.p_decay.slope.to_double();
    require(slope >= 0.8, "orbit-sum decay exponent " + std::to_string(slope) + " < 0.8");
    std::ostringstream os;
    os << "levels 4..12 fit: |p_n| decays against Delta_(n-1) with exponent " << slope
       << " >= 0.8";
    return os.str();
}

// --- criterion 8: regularity estimation -----------------------------------

std::string criterion_regularity_estimation() {
    auto ctx = PrecisionContext::make(256);
    std::ostringstream os;
    for (double beta : {0.3, 0.5, 0.7}) {
        std::vector<std::pair<BigFloat, BigFloat>> v;
        v.reserve(8192);
        for (long i = 0; i < 8192; ++i) {
            BigFloat x = ctx.of(i) / 8192L;
            v.emplace_back(x, circlemap::perturbation_jet(ctx.of(beta), 2, 24, x, 256).d3);
        }
        auto scales = conjugacy::default_holder_scales(v);
        auto r = conjugacy::holder_exponent(v, scales.first, scales.second);
        require(!r.cap_hit, "lacunar signal hit the Lipschitz cap");
        double got = r.exponent.to_double();
        require(std::abs(got - beta) <= 0.1,
                "recovered exponent " + std::to_string(got) + " off " + std::to_string(beta));
        os << "beta " << beta << " -> " << got << ", ";
    }

    const TunedGolden& tg = tuned_golden(ctx);
    auto orbit = circlemap::iterate_orbit(tg.map, ctx.zero(), 8192, ctx.guard());
    auto density = conjugacy::density_estimate(conjugacy::conjugacy_samples(orbit, tg.est.rho));
    std::vector<std::pair<BigFloat, BigFloat>> pairs;
    for (size_t i = 0; i < density.at.size(); ++i)
        pairs.emplace_back(density.at[i], density.h_values[i]);
    auto scales = conjugacy::default_holder_scales(pairs);
    auto r = conjugacy::holder_exponent(pairs, scales.first, scales.second);
    require(r.cap_hit, "analytic density exponent " + short_dec(r.exponent) +
                           " below the 0.95 cap");
    os << "analytic density exponent " << r.exponent.to_double() << " (cap hit)";
    return os.str();
}

// --- criterion 9: exponent schedule ---------------------------------------

std::string criterion_exponent_schedule() {
    struct Case {
        mpq_class beta, delta;
        long steps;
    };
    std::vector<Case> cases = {{mpq_class(1, 5), mpq_class(1, 2), 1},
                               {mpq_class(1, 2), mpq_class(9, 10), 8},
                               {mpq_class(9, 10), mpq_class(19, 20), 26}};
    for (const Case& c : cases) {
        auto s = conjugacy::exponent_schedule(c.beta, c.delta);
        require(s.steps_to_fixpoint == c.steps,
                "step count " + std::to_string(s.steps_to_fixpoint) + " != " +
                    std::to_string(c.steps));
        require(static_cast<long>(s.sigmas.size()) == c.steps + 1, "sigma count off");
        // independent recurrence and closed form, both in exact rationals
        mpq_class cap = 1 + c.beta, ratio = mpq_class(2) / (1 + c.delta);
        mpq_class rec = 1, power = 1;
        for (long i = 0; i <= c.steps; ++i) {
            mpq_class closed = power < cap ? power : cap;
            require(s.sigmas[static_cast<size_t>(i)] == rec, "recurrence entry mismatch");
            require(rec == closed, "recurrence leaves the closed form");
            mpq_class next = rec * ratio;
            rec = next < cap ? next : cap;
            power *= ratio;
        }
        require(s.sigmas.back() == cap, "schedule did not reach 1+beta");
    }
    return "worked examples take 1, 8, 26 steps; recurrence equals closed form exactly";
}

// --- criterion 10: reproducible reports -----------------------------------

std::string criterion_reproducible_reports() {
    fs::path root = fs::temp_directory_path() / ("clab_accept_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);
    auto run = [&](const std::string& out) {
        std::string cmd = std::string(CLAB_CLI_PATH) +
                          " denjoy --tune 4 --levels 6 --depth 12 --samples 24 --density 800"
                          " --out " + out + " > /dev/null 2>&1";
        int raw = std::system(cmd.c_str());
        require(WIFEXITED(raw) && WEXITSTATUS(raw) == 0, "driver run failed");
    };
    run((root / "a").string());
    run((root / "b").string());
    long compared = 0;
    for (const auto& entry : fs::directory_iterator(root / "a")) {
        std::string name = entry.path().filename().string();
        std::string left = report::strip_timestamp_lines(report::read_file(entry.path().string()));
        std::string right =
            report::strip_timestamp_lines(report::read_file((root / "b" / name).string()));
        require(left == right, "file " + name + " differs between identical runs");
        ++compared;
    }
    require(compared >= 4, "expected at least config, table and two plot files");
    fs::remove_all(root);
    return "two driver runs, " + std::to_string(compared) +
           " files bitwise identical after dropping the timestamp line";
}

// --- harness ---------------------------------------------------------------

struct Criterion {
    int number;
    const char* name;
    double budget_seconds;
    std::function<std::string()> body;
};

}  // namespace

int main() {
    std::vector<Criterion> gate = {
        {1, "exact identity batteries", 120, criterion_identity_batteries},
        {2, "rigid rotation exactness", 60, criterion_rigid_exactness},
        {3, "moebius neutrality", 60, criterion_moebius_neutrality},
        {4, "expansion decay rates", 120, criterion_expansion_rates},
        {5, "metallic-mean closed forms", 60, criterion_metallic_closed_forms},
        {6, "tuned deviation decay", 180, criterion_tuned_deviation_decay},
        {7, "orbit-sum decay", 180, criterion_orbit_sum_decay},
        {8, "regularity estimation", 120, criterion_regularity_estimation},
        {9, "exponent schedule", 5, criterion_exponent_schedule},
        {10, "reproducible reports", 60, criterion_reproducible_reports},
    };

    int failures = 0;
    for (const Criterion& c : gate) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool pass = true;
        try {
            detail = c.body();
        } catch (const std::exception& e) {
            pass = false;
            detail = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (pass && secs > c.budget_seconds) {
            pass = false;
            detail += " [over time budget]";
        }
        failures += pass ? 0 : 1;
        std::printf("criterion %2d (%s): %s — %s; %.1fs (budget %.0fs)\n", c.number, c.name,
                    pass ? "PASS" : "FAIL", detail.c_str(), secs, c.budget_seconds);
        std::fflush(stdout);
    }
    std::printf("acceptance: %d/%zu criteria passed\n", static_cast<int>(gate.size()) - failures,
                gate.size());
    return failures;
}
