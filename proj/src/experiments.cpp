#include "circlelab/experiments.hpp"

#include <cstdlib>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "circlelab/bigfloat.hpp"
#include "circlelab/circlemap.hpp"
#include "circlelab/conjugacy.hpp"
#include "circlelab/crossratio.hpp"
#include "circlelab/renorm.hpp"
#include "circlelab/report.hpp"
#include "circlelab/rng.hpp"
#include "circlelab/rotnum.hpp"

namespace circlelab::experiments {

namespace {

using nlohmann::ordered_json;

const std::set<std::string> kExperiments = {"rotnum",  "crossratio", "identities", "denjoy",
                                            "schwarz", "conjugacy",  "schedule"};
const std::set<std::string> kFamilies = {"rigid", "sine", "weierstrass"};

// ---------------------------------------------------------------------------
// Value parsing and rendering
// ---------------------------------------------------------------------------

std::string or_dash(const std::string& s) { return s.empty() ? "-" : s; }

std::string undash(const std::string& s) { return s == "-" ? "" : s; }

// "p/q" or a plain decimal ("0.2", "3", "-1.25") as an exact rational.
mpq_class parse_rational(const std::string& s, const std::string& field) {
    try {
        if (s.find('/') != std::string::npos) {
            mpq_class q(s);
            q.canonicalize();
            return q;
        }
        size_t dot = s.find('.');
        if (dot == std::string::npos) return mpq_class(mpz_class(s));
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        bool neg = !digits.empty() && digits[0] == '-';
        if (neg) digits = digits.substr(1);
        if (digits.empty()) throw std::invalid_argument(s);
        mpz_class num(digits);
        mpz_class den = 1;
        for (size_t i = 0; i < s.size() - dot - 1; ++i) den *= 10;
        mpq_class q(neg ? mpz_class(-num) : num, den);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw UsageError(field + ": cannot parse '" + s + "' as a rational (use p/q or decimal)");
    }
}

std::string rational_string(const mpq_class& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

std::string cf_list_string(const std::vector<long>& ks) {
    if (ks.empty()) return "-";
    std::string s;
    for (size_t i = 0; i < ks.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(ks[i]);
    }
    return s;
}

std::vector<long> parse_cf_list(const std::string& s, const std::string& field) {
    std::vector<long> ks;
    if (s.empty() || s == "-") return ks;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            size_t used = 0;
            long k = std::stol(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            ks.push_back(k);
        } catch (const std::exception&) {
            throw UsageError(field + ": cannot parse quotient '" + tok + "'");
        }
    }
    return ks;
}

long parse_long(const std::string& s, const std::string& field) {
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError(field + ": cannot parse integer '" + s + "'");
    }
}

std::string dec(const BigFloat& x, int digits = 20) { return x.to_decimal(digits); }

// Shortest round-trip rendering of a double, identical to its JSON form.
std::string dstr(double x) { return nlohmann::ordered_json(x).dump(); }

// ---------------------------------------------------------------------------
// Map preparation
// ---------------------------------------------------------------------------

// Target rotation number as a value: explicit decimal, quotient prefix
// completed with a golden tail (so the prefix is realized exactly by an
// irrational), or the golden mean.
BigFloat target_rho_value(const ExperimentConfig& c, const PrecisionContext& ctx) {
    if (!c.rho.empty()) {
        BigFloat v = ctx.parse(c.rho);
        if (!(v > ctx.zero()) || !(v < ctx.of(1L)))
            throw UsageError("rho: target must lie in (0,1), got " + c.rho);
        return v;
    }
    if (!c.rho_cf.empty()) {
        // [0; k_1..k_N, 1, 1, ...]: convergent tables by hand (the canonical
        // continued-fraction builder would reject a trailing quotient of 1,
        // which is legitimate here because a tail follows).
        mpz_class p_prev = 1, p_cur = 0, q_prev = 0, q_cur = 1;  // p(-1), p(0), q(-1), q(0)
        for (long k : c.rho_cf) {
            if (k < 1) throw UsageError("rho_cf: quotients must be >= 1");
            mpz_class p = k * p_cur + p_prev;
            mpz_class q = k * q_cur + q_prev;
            p_prev = p_cur;
            p_cur = p;
            q_prev = q_cur;
            q_cur = q;
        }
        BigFloat tail = rotnum::golden_mean(ctx) + ctx.of(1L);  // [1; 1, 1, ...]
        return (ctx.of(p_cur) * tail + ctx.of(p_prev)) / (ctx.of(q_cur) * tail + ctx.of(q_prev));
    }
    return rotnum::golden_mean(ctx);
}

struct Prepared {
    circlemap::CircleMapSpec map;
    circlemap::RotationEstimate est;
    std::string descriptor;
    bool tuned = false;
};

circlemap::CircleMapSpec build_family(const ExperimentConfig& c, const BigFloat& omega,
                                      const PrecisionContext& ctx) {
    if (c.family == "rigid") return circlemap::CircleMapSpec::rigid_rotation(omega);
    if (c.family == "sine") {
        BigFloat a = c.coupling.empty() ? ctx.of(0.5) : ctx.parse(c.coupling);
        return circlemap::CircleMapSpec::sine_family(omega, a);
    }
    BigFloat beta = ctx.of(parse_rational(c.beta.empty() ? "0.5" : c.beta, "beta"));
    BigFloat a = c.coupling.empty()
                     ? circlemap::CircleMapSpec::weierstrass_default_coupling(
                           beta, c.lambda, c.terms, ctx.bits) /
                           ctx.of(2L)
                     : ctx.parse(c.coupling);
    return circlemap::CircleMapSpec::weierstrass_family(omega, a, beta, c.lambda, c.terms);
}

std::string describe(const circlemap::CircleMapSpec& map) {
    using circlemap::Family;
    std::ostringstream os;
    switch (map.family()) {
        case Family::RigidRotation:
            os << "rigid(omega=" << dec(map.omega()) << ")";
            break;
        case Family::SineFamily:
            os << "sine(omega=" << dec(map.omega()) << ",a=" << dec(map.coupling()) << ")";
            break;
        case Family::WeierstrassFamily:
            os << "weierstrass(omega=" << dec(map.omega()) << ",a=" << dec(map.coupling())
               << ",beta=" << dec(map.holder_beta()) << ",lambda=" << map.lambda()
               << ",terms=" << map.terms() << ")";
            break;
    }
    return os.str();
}

Prepared prepare_map(const ExperimentConfig& c, const PrecisionContext& ctx) {
    BigFloat target = target_rho_value(c, ctx);
    // Explicit omega wins; otherwise rigid rotations realize the target
    // exactly and the nonlinear families start from the golden offset.
    BigFloat omega = !c.omega.empty() ? ctx.parse(c.omega)
                     : c.family == "rigid" ? target
                                           : rotnum::golden_mean(ctx);
    circlemap::CircleMapSpec map = build_family(c, omega, ctx);
    bool tuned = false;
    if (c.tune > 0) {
        if (c.family == "rigid")
            throw UsageError("tune: rigid rotations realize the target exactly; drop --tune");
        rotnum::ContinuedFraction target_cf = rotnum::cf_expand(target, c.tune, ctx);
        BigFloat tol = pow(ctx.of(10L), ctx.of(-2 * c.tune));
        map = map.with_omega(circlemap::tune_parameter(map, target_cf, tol, ctx));
        tuned = true;
    }
    // Certifying quotient depth d needs roughly q_{d+1} iterates, and the
    // smallest q-sequence grows like Fibonacci numbers, so deep requests get
    // a budget of twice that floor instead of the library default.
    long budget = 500'000;
    {
        long a = 1, b = 1;
        for (long i = 0; i < std::min(c.depth, 32L); ++i) {
            long next = a + b;
            a = b;
            b = next;
        }
        budget = std::max(budget, 2 * b);
    }
    circlemap::RotationEstimate est = circlemap::rotation_number(map, ctx, c.depth, budget);
    std::string descriptor = describe(map);
    return Prepared{std::move(map), std::move(est), std::move(descriptor), tuned};
}

// The partition experiments read q-values as longs; anything larger has
// long since blown the orbit budget anyway.
long q_long(const rotnum::ContinuedFraction& cf, long n) {
    const mpz_class& q = cf.q(n);
    if (!q.fits_slong_p())
        throw ResourceError("experiments: q_" + std::to_string(n) + " does not fit in a long");
    return q.get_si();
}

void require_depth(const Prepared& prep, long levels) {
    if (prep.est.depth_reached < levels + 2)
        throw UsageError("depth: measured continued fraction reached depth " +
                         std::to_string(prep.est.depth_reached) + " but levels " +
                         std::to_string(levels) + " needs depth " + std::to_string(levels + 2) +
                         "; raise --depth or lower --levels");
}

// ---------------------------------------------------------------------------
// Output assembly
// ---------------------------------------------------------------------------

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    bool empty() const { return columns.empty(); }
};

struct Output {
    std::string headline;  // one-line run summary for stdout
    ordered_json summary;  // experiment-specific scalars, insertion-ordered
    Table table;
    // filename -> content; written next to the primary report, timestamp-free.
    std::vector<std::pair<std::string, std::string>> side_files;
};

std::string summary_value_string(const ordered_json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string render_csv(const report::Provenance& prov, const Output& out) {
    std::ostringstream os;
    os << prov.csv_comment_block();
    for (const auto& [key, value] : out.summary.items())
        os << "# " << key << ": " << summary_value_string(value) << "\n";
    if (!out.table.empty()) {
        for (size_t i = 0; i < out.table.columns.size(); ++i)
            os << (i ? "," : "") << out.table.columns[i];
        os << "\n";
        for (const auto& row : out.table.rows) {
            for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
            os << "\n";
        }
    }
    return os.str();
}

std::string render_json(const report::Provenance& prov, const Output& out) {
    ordered_json j;
    prov.add_to(j);
    for (const auto& [key, value] : out.summary.items()) j[key] = value;
    if (!out.table.empty()) {
        j["columns"] = out.table.columns;
        auto rows = ordered_json::array();
        for (const auto& row : out.table.rows) rows.push_back(row);
        j["rows"] = rows;
    }
    return j.dump(2) + "\n";
}

// Minimal provenance line for sidecar data files (which carry no timestamp
// so that reruns reproduce them byte-for-byte).
std::string side_stamp(const report::Provenance& prov) {
    return "# experiment: " + prov.experiment + "\n# config_hash: " + prov.config_hash + "\n";
}

// ---------------------------------------------------------------------------
// Experiment bodies
// ---------------------------------------------------------------------------

Output run_rotnum(const ExperimentConfig& c, const PrecisionContext& ctx, const Prepared& prep) {
    const rotnum::ContinuedFraction& cf = prep.est.cf;
    rotnum::GapSequence gaps = rotnum::gap_sequence(cf, ctx);
    rotnum::DiophantineWitness dio = rotnum::diophantine_estimate(gaps, ctx);

    Output out;
    out.summary["depth_reached"] = prep.est.depth_reached;
    out.summary["bracket_width"] = dec(prep.est.bracket_width, 6);
    out.summary["rational_termination"] = cf.rational_termination;
    out.summary["diophantine_delta_hat"] = dio.delta_hat.to_double();
    out.summary["diophantine_constant"] = dio.constant_estimate.to_double();

    out.table.columns = {"n", "k_n", "p_n", "q_n", "delta_n"};
    for (long n = 1; n <= cf.depth(); ++n) {
        std::vector<std::string> row = {std::to_string(n),
                                        cf.quotients[static_cast<size_t>(n - 1)].get_str(),
                                        cf.p(n).get_str(), cf.q(n).get_str(),
                                        n <= gaps.max_level() ? dec(gaps.delta(n)) : ""};
        out.table.rows.push_back(std::move(row));
    }

    std::ostringstream head;
    head << "rotnum: rho=" << dec(prep.est.rho, 30) << " depth=" << prep.est.depth_reached;
    out.headline = head.str();
    return out;
}

std::string sweep_csv(const report::Provenance& prov, const crossratio::Sweep& sweep) {
    std::ostringstream os;
    os << side_stamp(prov);
    crossratio::write_sweep_csv(sweep, os);
    return os.str();
}

std::string sweep_plot(const report::Provenance& prov, const crossratio::Sweep& sweep) {
    std::ostringstream os;
    os << side_stamp(prov);
    for (const auto& p : sweep) {
        if (p.residual.is_zero()) continue;
        os << dec(log10(p.delta)) << " " << dec(log10(abs(p.residual))) << "\n";
    }
    return os.str();
}

Output run_crossratio(const ExperimentConfig& c, const PrecisionContext& ctx,
                      const Prepared& prep, const report::Provenance& prov) {
    SampleRng rng(c.seed);
    BigFloat xi = ctx.of(rng.uniform());
    circlemap::IteratedLift lift(prep.map, 1);

    const double delta_lo = 1e-5, delta_hi = 1e-2;
    crossratio::Sweep dr = crossratio::dr_expansion_sweep(lift, xi, delta_lo, delta_hi, ctx);
    crossratio::Sweep dist = crossratio::dist_expansion_sweep(lift, xi, delta_lo, delta_hi, ctx);
    ScaleFitReport dr_fit = crossratio::fit_sweep_slope(dr);
    ScaleFitReport dist_fit = crossratio::fit_sweep_slope(dist);

    Output out;
    out.summary["xi"] = dec(xi);
    out.summary["delta_lo"] = delta_lo;
    out.summary["delta_hi"] = delta_hi;
    out.summary["dr_points"] = static_cast<long>(dr.size());
    out.summary["dr_slope"] = dr_fit.slope.to_double();
    out.summary["dist_points"] = static_cast<long>(dist.size());
    out.summary["dist_slope"] = dist_fit.slope.to_double();

    if (c.format == "json") {
        auto rows = [](const crossratio::Sweep& sweep) {
            auto arr = ordered_json::array();
            for (const auto& p : sweep)
                arr.push_back({{"delta", dec(p.delta)},
                               {"actual", dec(p.actual)},
                               {"predicted", dec(p.predicted)},
                               {"residual", dec(p.residual)}});
            return arr;
        };
        out.summary["dr_sweep"] = rows(dr);
        out.summary["dist_sweep"] = rows(dist);
    } else {
        out.side_files.emplace_back("crossratio_dr.csv", sweep_csv(prov, dr));
        out.side_files.emplace_back("crossratio_dist.csv", sweep_csv(prov, dist));
    }
    out.side_files.emplace_back("crossratio_dr.dat", sweep_plot(prov, dr));
    out.side_files.emplace_back("crossratio_dist.dat", sweep_plot(prov, dist));
    out.side_files.emplace_back(
        "crossratio_plots.txt",
        side_stamp(prov) +
            "crossratio_dr.dat: log10(window size) vs log10|residual| of the three-point\n"
            "ratio-distortion expansion; the slope is the expansion's decay order.\n"
            "crossratio_dist.dat: the same for the four-point cross-ratio distortion\n"
            "expansion with the Schwarzian term evaluated at the window midpoint.\n");

    std::ostringstream head;
    head << "crossratio: dr_slope=" << dr_fit.slope.to_double()
         << " dist_slope=" << dist_fit.slope.to_double();
    out.headline = head.str();
    return out;
}

Output run_identities(const ExperimentConfig& c, const PrecisionContext& ctx,
                      const Prepared& prep) {
    require_depth(prep, c.levels);
    long need = q_long(prep.est.cf, c.levels + 1) + q_long(prep.est.cf, c.levels) + 1;
    auto orbit = std::make_shared<const circlemap::OrbitCache>(
        circlemap::iterate_orbit(prep.map, ctx.zero(), need, ctx.guard()));

    std::vector<renorm::DynamicalPartition> parts;
    for (long n = 1; n <= c.levels + 1; ++n)
        parts.push_back(renorm::build_partition(orbit, prep.est.cf, n, ctx));

    Output out;
    out.table.columns = {"n",             "observ1_res",   "observ2_res",  "observ3_res",
                         "observ1_scale", "observ2_scale", "observ3_scale"};
    for (long n = 2; n <= c.levels; ++n) {
        renorm::IdentityResiduals r = renorm::exact_identities_check(
            prep.map, parts[static_cast<size_t>(n - 2)], parts[static_cast<size_t>(n - 1)],
            parts[static_cast<size_t>(n)], ctx);
        out.table.rows.push_back({std::to_string(n), dec(r.observ1), dec(r.observ2),
                                  dec(r.observ3), dec(r.observ1_scale), dec(r.observ2_scale),
                                  dec(r.observ3_scale)});
    }

    // Random-window battery for the pointwise identities: the exact relation
    // between the three orderings of a triple, both composition laws, and the
    // factorization of the cross-ratio distortion. Each residual is enforced
    // at 64 eps times its magnitude scale.
    SampleRng rng(c.seed);
    circlemap::IteratedLift lift1(prep.map, 1);
    circlemap::IteratedLift lift2(prep.map, 2);
    BigFloat tol_unit = ctx.of(64L) * ctx.eps();
    BigFloat relation_max = ctx.zero(), mult_ratio_max = ctx.zero(),
             mult_cross_max = ctx.zero(), factor_max = ctx.zero();
    auto enforce = [&](const char* name, const BigFloat& res, const BigFloat& scale, long i) {
        if (res > tol_unit * scale)
            throw VerificationError("identities: " + std::string(name) + " residual " +
                                    dec(res, 6) + " exceeds 64*eps*" + dec(scale, 6) +
                                    " at sample " + std::to_string(i));
    };
    for (long i = 0; i < c.samples; ++i) {
        double base = rng.uniform();
        double w = 0.01 + 0.04 * rng.uniform();
        BigFloat x[4];
        for (int k = 0; k < 4; ++k)  // sorted, pairwise separated by >= w/20
            x[k] = ctx.of(base + w * ((k + 0.8 * rng.uniform()) / 4.0));

        BigFloat rel = abs(crossratio::exact_relation_check(x[0], x[1], x[2], lift1));
        BigFloat d = abs(crossratio::ratio_distortion(x[0], x[1], x[2], lift1).value);
        enforce("exact_relation", rel, ctx.of(1L) + d + d, i);
        relation_max = max(relation_max, rel);

        crossratio::Quad quad{x[0], x[1], x[2], x[3]};
        crossratio::MultiplicativityResiduals mult =
            crossratio::check_multiplicativity(quad, lift1, lift1);
        BigFloat d2 = abs(crossratio::ratio_distortion(x[0], x[1], x[2], lift2).value);
        BigFloat dist2 = abs(crossratio::cross_ratio_distortion(quad, lift2).value);
        enforce("multiplicativity(ratio)", mult.ratio_law, ctx.of(1L) + d2 + d2, i);
        enforce("multiplicativity(cross_ratio)", mult.cross_ratio_law, ctx.of(1L) + dist2 + dist2,
                i);
        mult_ratio_max = max(mult_ratio_max, mult.ratio_law);
        mult_cross_max = max(mult_cross_max, mult.cross_ratio_law);

        BigFloat lhs = crossratio::cross_ratio_distortion(quad, lift1).value;
        BigFloat rhs = crossratio::ratio_distortion(x[0], x[1], x[2], lift1).value /
                       crossratio::ratio_distortion(x[0], x[3], x[2], lift1).value;
        BigFloat fac = abs(lhs - rhs);
        enforce("factorization", fac, ctx.of(1L) + abs(lhs) + abs(rhs), i);
        factor_max = max(factor_max, fac);
    }

    out.summary["levels"] = c.levels;
    out.summary["battery_samples"] = c.samples;
    out.summary["exact_relation_max"] = dec(relation_max, 6);
    out.summary["mult_ratio_max"] = dec(mult_ratio_max, 6);
    out.summary["mult_cross_ratio_max"] = dec(mult_cross_max, 6);
    out.summary["factorization_max"] = dec(factor_max, 6);

    std::ostringstream head;
    head << "identities: levels 2.." << c.levels << " and " << c.samples
         << " random windows, all residuals within 64*eps*(magnitudes)";
    out.headline = head.str();
    return out;
}

Table survey_table(const renorm::LevelSurvey& survey) {
    Table t;
    t.columns = {"n",     "q_n",      "delta_n",     "sup_dev",     "e_n_1",      "eps_n_1",
                 "p_sum", "pbar_sum", "observ1_res", "observ2_res", "observ3_res"};
    for (const renorm::LevelSummary& r : survey.rows)
        t.rows.push_back({std::to_string(r.level), r.q.get_str(), dec(r.gap), dec(r.sup_dev),
                          dec(r.e1), dec(r.eps1), dec(r.p_sum), dec(r.pbar_sum),
                          dec(r.observ1_res), dec(r.observ2_res), dec(r.observ3_res)});
    return t;
}

void add_theorem_summary(const ExperimentConfig& c, Output& out) {
    mpq_class beta = parse_rational(c.beta, "beta");
    mpq_class delta = parse_rational(c.delta, "delta");
    conjugacy::RegularityPrediction pred =
        conjugacy::predicted_regularity(mpq_class(3) + beta, delta);
    conjugacy::ExponentSchedule sched = conjugacy::exponent_schedule(beta, delta);
    out.summary["theorem_beta"] = rational_string(beta);
    out.summary["theorem_delta"] = rational_string(delta);
    out.summary["predicted_conjugacy_exponent"] = pred.conjugacy_exponent.get_d();
    out.summary["predicted_density_exponent"] = pred.density_exponent.get_d();
    out.summary["schedule_steps"] = sched.steps_to_fixpoint;
}

Output run_survey(const ExperimentConfig& c, const PrecisionContext& ctx, const Prepared& prep,
                  const report::Provenance& prov) {
    require_depth(prep, c.levels);
    renorm::LevelSurvey survey =
        renorm::survey_levels(prep.map, prep.est.cf, 2, c.levels, c.samples, c.density, ctx);
    rotnum::GapSequence gaps = rotnum::gap_sequence(prep.est.cf, ctx);

    Output out;
    out.summary["n_lo"] = 2L;
    out.summary["n_hi"] = c.levels;
    out.summary["samples_per_level"] = c.samples;
    out.summary["density_depth"] = c.density;
    out.summary["deviation_vanishes"] = survey.deviation_vanishes;
    if (!survey.deviation_vanishes && !survey.denjoy_nu.points.empty())
        out.summary["fitted_nu"] = survey.denjoy_nu.slope.to_double();
    if (!survey.p_decay.points.empty())
        out.summary["p_decay_slope"] = survey.p_decay.slope.to_double();

    std::ostringstream head;
    if (c.experiment == "denjoy") {
        if (c.theorem_regime) add_theorem_summary(c, out);
        std::ostringstream plot;
        plot << side_stamp(prov);
        for (const renorm::LevelSummary& r : survey.rows)
            if (!r.sup_dev.is_zero())
                plot << dec(log10(r.gap)) << " " << dec(log10(r.sup_dev)) << "\n";
        out.side_files.emplace_back("denjoy_decay.dat", plot.str());
        out.side_files.emplace_back(
            "denjoy_decay.txt",
            side_stamp(prov) +
                "denjoy_decay.dat: log10(Delta_n) vs log10 sup|(T^(q_n))' - 1| per level;\n"
                "the slope is the fitted Denjoy decay exponent nu.\n");
        head << "denjoy: levels 2.." << c.levels;
        if (survey.deviation_vanishes)
            head << ", return derivatives exactly 1 at every sampled level";
        else if (!survey.denjoy_nu.points.empty())
            head << ", fitted_nu=" << survey.denjoy_nu.slope.to_double();
    } else {
        std::ostringstream plot;
        plot << side_stamp(prov);
        for (const renorm::LevelSummary& r : survey.rows)
            if (!r.p_sum.is_zero() && r.level >= 1 && r.level - 1 <= gaps.max_level())
                plot << dec(log10(gaps.delta(r.level - 1))) << " " << dec(log10(abs(r.p_sum)))
                     << "\n";
        out.side_files.emplace_back("schwarz_decay.dat", plot.str());
        out.side_files.emplace_back(
            "schwarz_decay.txt",
            side_stamp(prov) +
                "schwarz_decay.dat: log10(Delta_(n-1)) vs log10|p_n| per level, the decay\n"
                "of the density-weighted Schwarzian orbit sums.\n");
        head << "schwarz: levels 2.." << c.levels;
        if (!survey.p_decay.points.empty())
            head << ", p_decay_slope=" << survey.p_decay.slope.to_double();
        else
            head << ", all p_n exactly 0";
    }
    out.table = survey_table(survey);
    out.headline = head.str();
    return out;
}

Output run_conjugacy(const ExperimentConfig& c, const PrecisionContext& ctx, const Prepared& prep,
                     const report::Provenance& prov) {
    long n = c.samples;
    circlemap::OrbitCache orbit = circlemap::iterate_orbit(prep.map, ctx.zero(), n, ctx.guard());
    conjugacy::ConjugacySamples samples = conjugacy::conjugacy_samples(orbit, prep.est.rho);
    conjugacy::DensityEstimate density = conjugacy::density_estimate(samples);
    BigFloat hres = conjugacy::homologic_residual(prep.map, density, ctx);

    std::vector<std::pair<BigFloat, BigFloat>> pairs;
    pairs.reserve(density.at.size());
    for (size_t i = 0; i < density.at.size(); ++i)
        pairs.emplace_back(density.at[i], density.h_values[i]);
    auto [scale_min, scale_max] = conjugacy::default_holder_scales(pairs);
    conjugacy::RegularityEstimate reg = conjugacy::holder_exponent(pairs, scale_min, scale_max);

    // Predicted Hoelder exponent of the invariant density: r - 2 - delta for
    // a C^r = C^(3+beta) map in the theorem regime, otherwise the Lipschitz
    // cap (analytic families are indistinguishable from Lipschitz here).
    double predicted = 1.0;
    if (!c.beta.empty() && !c.delta.empty()) {
        conjugacy::RegularityPrediction pred = conjugacy::predicted_regularity(
            mpq_class(3) + parse_rational(c.beta, "beta"), parse_rational(c.delta, "delta"));
        predicted = pred.density_exponent.get_d();
    }

    Output out;
    out.summary["N"] = n;
    out.summary["density_mean"] = dec(density.weighted_mean, 30);
    out.summary["homologic_residual"] = dec(hres, 6);
    out.summary["holder_exponent"] = reg.exponent.to_double();
    out.summary["predicted_exponent"] = predicted;
    out.summary["cap_hit"] = reg.cap_hit;
    out.summary["scheme"] = density.scheme;
    out.summary["scale_min"] = dec(scale_min, 6);
    out.summary["scale_max"] = dec(scale_max, 6);
    out.summary["fit_points"] = static_cast<long>(reg.fit.points.size());

    out.table.columns = {"map",
                         "rho",
                         "N",
                         "density_mean",
                         "homologic_residual",
                         "holder_exponent",
                         "predicted_exponent",
                         "cap_hit"};
    out.table.rows.push_back({prov.map_descriptor, dec(prep.est.rho, 30), std::to_string(n),
                              dec(density.weighted_mean, 30), dec(hres, 6),
                              dstr(reg.exponent.to_double()), dstr(predicted),
                              reg.cap_hit ? "1" : "0"});

    std::ostringstream plot;
    plot << side_stamp(prov);
    for (size_t i = 0; i < density.at.size(); ++i)
        plot << dec(density.at[i]) << " " << dec(density.h_values[i]) << "\n";
    out.side_files.emplace_back("conjugacy_density.dat", plot.str());
    out.side_files.emplace_back(
        "conjugacy_density.txt",
        side_stamp(prov) +
            "conjugacy_density.dat: gap midpoint vs divided-difference estimate of the\n"
            "invariant density h = phi' from the exact conjugacy samples.\n");

    std::ostringstream head;
    head << "conjugacy: N=" << n << " holder_exponent=" << reg.exponent.to_double()
         << (reg.cap_hit ? " (cap_hit)" : "") << " homologic_residual=" << dec(hres, 3);
    out.headline = head.str();
    return out;
}

Output run_schedule(const ExperimentConfig& c) {
    mpq_class beta = parse_rational(c.beta, "beta");
    mpq_class delta = parse_rational(c.delta, "delta");
    conjugacy::ExponentSchedule sched = conjugacy::exponent_schedule(beta, delta);

    Output out;
    out.summary["beta"] = rational_string(beta);
    out.summary["delta"] = rational_string(delta);
    auto sigmas = ordered_json::array();
    auto exact = ordered_json::array();
    for (const mpq_class& s : sched.sigmas) {
        if (s.get_den() == 1)
            sigmas.push_back(s.get_num().get_si());
        else
            sigmas.push_back(s.get_d());
        exact.push_back(s.get_str());
    }
    out.summary["sigmas"] = sigmas;
    out.summary["sigmas_exact"] = exact;
    out.summary["steps"] = sched.steps_to_fixpoint;

    out.table.columns = {"i", "sigma", "sigma_exact"};
    PrecisionContext ctx = PrecisionContext::make(128);
    for (size_t i = 0; i < sched.sigmas.size(); ++i)
        out.table.rows.push_back(
            {std::to_string(i), dec(ctx.of(sched.sigmas[i])), sched.sigmas[i].get_str()});

    std::ostringstream head;
    head << "schedule: beta=" << rational_string(beta) << " delta=" << rational_string(delta)
         << " reaches 1+beta in " << sched.steps_to_fixpoint << " steps";
    out.headline = head.str();
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// ExperimentConfig
// ---------------------------------------------------------------------------

ExperimentConfig ExperimentConfig::defaults_for(const std::string& experiment) {
    if (!kExperiments.count(experiment))
        throw UsageError("unknown experiment '" + experiment +
                         "' (expected rotnum, crossratio, identities, denjoy, schwarz, "
                         "conjugacy, or schedule)");
    ExperimentConfig c;
    c.experiment = experiment;
    if (experiment == "crossratio") c.depth = 12;
    if (experiment == "identities") c.samples = 200;
    if (experiment == "denjoy" || experiment == "schwarz") c.levels = 10;
    if (experiment == "conjugacy") {
        c.samples = 8192;
        c.depth = 24;
    }
    return c;
}

std::string ExperimentConfig::canonical_text() const {
    std::ostringstream os;
    os << "# circlelab experiment configuration (the output directory is not hashed)\n";
    os << "experiment " << experiment << "\n";
    os << "precision " << precision << "\n";
    os << "depth " << depth << "\n";
    os << "levels " << levels << "\n";
    os << "samples " << samples << "\n";
    os << "density " << density << "\n";
    os << "seed " << seed << "\n";
    os << "format " << format << "\n";
    os << "map.family " << family << "\n";
    os << "map.omega " << or_dash(omega) << "\n";
    os << "map.coupling " << or_dash(coupling) << "\n";
    os << "map.lambda " << lambda << "\n";
    os << "map.terms " << terms << "\n";
    os << "rho.decimal " << or_dash(rho) << "\n";
    os << "rho.cf " << cf_list_string(rho_cf) << "\n";
    os << "rho.tune " << tune << "\n";
    os << "exponents.beta " << or_dash(beta) << "\n";
    os << "exponents.delta " << or_dash(delta) << "\n";
    os << "exponents.theorem_regime " << (theorem_regime ? 1 : 0) << "\n";
    return os.str();
}

std::string ExperimentConfig::hash() const { return report::hex64(report::fnv1a64(canonical_text())); }

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig c;
    std::istringstream is(text);
    std::string line;
    long lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        size_t sp = line.find(' ');
        if (sp == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected 'key value'");
        std::string key = line.substr(0, sp);
        std::string value = line.substr(sp + 1);
        if (key == "experiment")
            c.experiment = value;
        else if (key == "precision")
            c.precision = parse_long(value, key);
        else if (key == "depth")
            c.depth = parse_long(value, key);
        else if (key == "levels")
            c.levels = parse_long(value, key);
        else if (key == "samples")
            c.samples = parse_long(value, key);
        else if (key == "density")
            c.density = parse_long(value, key);
        else if (key == "seed") {
            try {
                size_t used = 0;
                c.seed = std::stoull(value, &used);
                if (used != value.size()) throw std::invalid_argument(value);
            } catch (const std::exception&) {
                throw UsageError("seed: cannot parse '" + value + "'");
            }
        }
        else if (key == "format")
            c.format = value;
        else if (key == "map.family")
            c.family = value;
        else if (key == "map.omega")
            c.omega = undash(value);
        else if (key == "map.coupling")
            c.coupling = undash(value);
        else if (key == "map.lambda")
            c.lambda = parse_long(value, key);
        else if (key == "map.terms")
            c.terms = parse_long(value, key);
        else if (key == "rho.decimal")
            c.rho = undash(value);
        else if (key == "rho.cf")
            c.rho_cf = parse_cf_list(value, key);
        else if (key == "rho.tune")
            c.tune = parse_long(value, key);
        else if (key == "exponents.beta")
            c.beta = undash(value);
        else if (key == "exponents.delta")
            c.delta = undash(value);
        else if (key == "exponents.theorem_regime")
            c.theorem_regime = parse_long(value, key) != 0;
        else
            throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key +
                             "'");
    }
    return c;
}

void ExperimentConfig::validate() const {
    if (!kExperiments.count(experiment))
        throw UsageError("unknown experiment '" + experiment +
                         "' (expected rotnum, crossratio, identities, denjoy, schwarz, "
                         "conjugacy, or schedule)");
    if (!kFamilies.count(family))
        throw UsageError("unknown family '" + family + "' (expected rigid, sine, weierstrass)");
    if (format != "csv" && format != "json")
        throw UsageError("format: expected csv or json, got '" + format + "'");
    if (precision < 64 || precision > 65536)
        throw UsageError("precision: expected 64..65536 bits, got " + std::to_string(precision));
    if (depth < 1 || depth > 60)
        throw UsageError("depth: expected 1..60, got " + std::to_string(depth));
    if (levels < 2 || levels > 30)
        throw UsageError("levels: expected 2..30, got " + std::to_string(levels));
    if (samples < 0) throw UsageError("samples: must be >= 0");
    if (density < 0) throw UsageError("density: must be >= 0");
    if (lambda < 2) throw UsageError("lambda: must be >= 2");
    if (terms < 1 || terms > 64) throw UsageError("terms: expected 1..64");
    if (tune < 0 || tune > 40) throw UsageError("tune: expected 0..40");
    if (!rho.empty() && !rho_cf.empty())
        throw UsageError("give either rho.decimal or rho.cf, not both");
    for (long k : rho_cf)
        if (k < 1) throw UsageError("rho.cf: quotients must be >= 1");
    if (experiment == "conjugacy" && samples < 2)
        throw UsageError("conjugacy: samples is the orbit length and must be >= 2");
    if (theorem_regime && experiment != "denjoy")
        throw UsageError("the theorem-regime preset belongs to the denjoy experiment");
    if (theorem_regime && family == "rigid")
        throw UsageError("the theorem-regime preset requires a weierstrass-family map");
    if (experiment == "schedule" || theorem_regime) {
        if (beta.empty() || delta.empty())
            throw UsageError(experiment == "schedule"
                                 ? "schedule requires --beta and --delta (0<beta<delta<1)"
                                 : "the theorem-regime preset requires --beta and --delta "
                                   "(0<beta<delta<1)");
        mpq_class b = parse_rational(beta, "beta");
        mpq_class d = parse_rational(delta, "delta");
        if (!(b > 0 && b < d && d < 1))
            throw UsageError("exponents must satisfy 0<beta<delta<1, got beta=" +
                             rational_string(b) + ", delta=" + rational_string(d));
    }
}

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

RunResult run(const ExperimentConfig& config) {
    ExperimentConfig c = config;
    // The theorem-regime preset studies a map of prescribed finite smoothness;
    // promote the default analytic family to the weierstrass one.
    if (c.theorem_regime && c.family == "sine") c.family = "weierstrass";
    c.validate();

    PrecisionContext ctx = PrecisionContext::make(c.precision);
    report::Provenance prov;
    prov.experiment = c.experiment;
    prov.config_hash = c.hash();
    prov.precision_bits = c.precision;
    prov.timestamp = report::iso_timestamp();

    std::optional<Prepared> prep;
    if (c.experiment != "schedule") {
        prep = prepare_map(c, ctx);
        prov.map_descriptor = prep->descriptor;
        prov.rho_decimal = prep->est.rho.to_decimal(50);
        prov.rho_cf = prep->est.cf.quotients;
    }

    Output out;
    if (c.experiment == "rotnum")
        out = run_rotnum(c, ctx, *prep);
    else if (c.experiment == "crossratio")
        out = run_crossratio(c, ctx, *prep, prov);
    else if (c.experiment == "identities")
        out = run_identities(c, ctx, *prep);
    else if (c.experiment == "denjoy" || c.experiment == "schwarz")
        out = run_survey(c, ctx, *prep, prov);
    else if (c.experiment == "conjugacy")
        out = run_conjugacy(c, ctx, *prep, prov);
    else
        out = run_schedule(c);

    RunResult result;
    std::string base = c.out + "/" + c.experiment;
    report::write_file_atomic(base + ".config", c.canonical_text());
    result.files.push_back(base + ".config");
    std::string primary = base + (c.format == "csv" ? ".csv" : ".json");
    report::write_file_atomic(primary,
                              c.format == "csv" ? render_csv(prov, out) : render_json(prov, out));
    result.files.push_back(primary);
    for (const auto& [name, content] : out.side_files) {
        std::string path = c.out + "/" + name;
        report::write_file_atomic(path, content);
        result.files.push_back(path);
    }
    result.summary = out.headline + " [config " + prov.config_hash + "]";
    return result;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const UsageError*>(&e)) return 2;
    if (dynamic_cast<const VerificationError*>(&e)) return 3;
    if (dynamic_cast<const ResourceError*>(&e)) return 4;
    if (dynamic_cast<const std::bad_alloc*>(&e)) return 4;
    if (dynamic_cast<const DomainError*>(&e)) return 2;
    if (dynamic_cast<const CombinatoricsError*>(&e)) return 2;
    if (dynamic_cast<const PeriodicOrbitError*>(&e)) return 2;
    if (dynamic_cast<const circlemap::ModeLockedError*>(&e)) return 2;
    return 1;
}

int run_with_exit_codes(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    try {
        RunResult r = run(config);
        out << r.summary << "\n";
        for (const std::string& f : r.files) out << "wrote " << f << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace circlelab::experiments
