// circlelab experiment runner: one subcommand per experiment, flags assemble
// an ExperimentConfig, reports land in --out with the configuration hash
// embedded. Exit codes: 0 success, 2 usage, 3 identity verification failure,
// 4 resource exhaustion.

#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "circlelab/experiments.hpp"
#include "circlelab/report.hpp"

namespace {

using circlelab::experiments::ExperimentConfig;
using circlelab::experiments::UsageError;

// Values staged by CLI11; merged over the experiment defaults (or over a
// --config file) only where the flag was actually given.
struct Staged {
    long precision = 0, depth = 0, levels = 0, samples = 0, density = 0;
    long lambda = 0, terms = 0, tune = 0;
    unsigned long long seed = 0;
    std::string family, omega, coupling, rho, rho_cf, beta, delta, out, format, config_path;
    bool theorem_regime = false;
};

struct SubOptions {
    CLI::App* app;
    std::map<std::string, CLI::Option*> opts;
};

SubOptions add_experiment(CLI::App& app, Staged& s, const std::string& name,
                          const std::string& description) {
    CLI::App* sub = app.add_subcommand(name, description);
    SubOptions so{sub, {}};
    auto opt = [&](const char* flag, auto& target, const char* help) {
        so.opts[flag] = sub->add_option(flag, target, help);
    };
    if (name != "schedule") {
        opt("--precision", s.precision, "working precision in bits (default 256)");
        opt("--depth", s.depth, "continued-fraction measurement depth");
        opt("--samples", s.samples, "sample count (points per level / random draws / orbit length)");
        opt("--seed", s.seed, "seed for reproducible point draws");
        opt("--family", s.family, "map family: rigid | sine | weierstrass");
        opt("--omega", s.omega, "rotation offset as a decimal string (default: golden mean)");
        opt("--coupling", s.coupling, "coupling strength as a decimal string");
        opt("--lambda", s.lambda, "weierstrass lacunary base (default 2)");
        opt("--terms", s.terms, "weierstrass series length (default 24)");
        opt("--rho", s.rho, "target rotation number as a decimal string");
        opt("--rho-cf", s.rho_cf, "target rotation number as quotients, e.g. 1,1,2");
        opt("--tune", s.tune, "tune the rotation offset to the target to this depth");
    }
    if (name == "identities" || name == "denjoy" || name == "schwarz")
        opt("--levels", s.levels, "deepest partition level");
    if (name == "denjoy" || name == "schwarz")
        opt("--density", s.density, "orbit length behind the density estimate");
    if (name == "schedule" || name == "denjoy" || name == "conjugacy") {
        opt("--beta", s.beta, "Hoelder exponent beta (rational p/q or decimal)");
        opt("--delta", s.delta, "Diophantine exponent delta (rational p/q or decimal)");
    }
    if (name == "denjoy")
        so.opts["--theorem-regime"] = sub->add_flag(
            "--theorem-regime", s.theorem_regime,
            "C^(3+beta) map with delta-Diophantine target; requires 0<beta<delta<1");
    opt("--out", s.out, "output directory (default .)");
    opt("--format", s.format, "report format: csv | json");
    opt("--config", s.config_path, "load a configuration file, then apply the flags above");
    return so;
}

std::vector<long> parse_quotients(const std::string& s) {
    std::vector<long> ks;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            size_t used = 0;
            ks.push_back(std::stol(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError("--rho-cf: cannot parse quotient '" + tok + "'");
        }
    }
    return ks;
}

ExperimentConfig assemble(const SubOptions& so, const Staged& s) {
    const std::string name = so.app->get_name();
    ExperimentConfig c;
    if (so.opts.count("--config") && so.opts.at("--config")->count() > 0) {
        c = circlelab::experiments::parse_config_text(
            circlelab::report::read_file(s.config_path));
        if (c.experiment.empty())
            c.experiment = name;
        else if (c.experiment != name)
            throw UsageError("config file is for experiment '" + c.experiment +
                             "' but the subcommand is '" + name + "'");
    } else {
        c = ExperimentConfig::defaults_for(name);
    }
    auto given = [&](const char* flag) {
        auto it = so.opts.find(flag);
        return it != so.opts.end() && it->second->count() > 0;
    };
    if (given("--precision")) c.precision = s.precision;
    if (given("--depth")) c.depth = s.depth;
    if (given("--levels")) c.levels = s.levels;
    if (given("--samples")) c.samples = s.samples;
    if (given("--density")) c.density = s.density;
    if (given("--seed")) c.seed = s.seed;
    if (given("--family")) c.family = s.family;
    if (given("--omega")) c.omega = s.omega;
    if (given("--coupling")) c.coupling = s.coupling;
    if (given("--lambda")) c.lambda = s.lambda;
    if (given("--terms")) c.terms = s.terms;
    if (given("--rho")) c.rho = s.rho;
    if (given("--rho-cf")) c.rho_cf = parse_quotients(s.rho_cf);
    if (given("--tune")) c.tune = s.tune;
    if (given("--beta")) c.beta = s.beta;
    if (given("--delta")) c.delta = s.delta;
    if (given("--theorem-regime")) c.theorem_regime = s.theorem_regime;
    if (given("--out")) c.out = s.out;
    if (given("--format")) c.format = s.format;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"circlelab: numerical experiments on smooth circle diffeomorphisms"};
    app.require_subcommand(1);
    app.footer("exit codes: 0 success, 2 usage error, 3 identity verification failure, "
               "4 resource exhaustion");

    Staged staged;
    std::vector<SubOptions> subs;
    subs.push_back(add_experiment(app, staged, "rotnum",
                                  "measure the rotation number and its convergent ladder"));
    subs.push_back(add_experiment(app, staged, "crossratio",
                                  "distortion-expansion sweeps and their decay slopes"));
    subs.push_back(add_experiment(app, staged, "identities",
                                  "exact distortion identities across partition levels"));
    subs.push_back(add_experiment(app, staged, "denjoy",
                                  "per-level return-map derivative deviations and decay fit"));
    subs.push_back(add_experiment(app, staged, "schwarz",
                                  "density-weighted Schwarzian orbit sums per level"));
    subs.push_back(add_experiment(app, staged, "conjugacy",
                                  "invariant density and its empirical Hoelder exponent"));
    subs.push_back(add_experiment(app, staged, "schedule",
                                  "exact exponent-bootstrap schedule for given beta, delta"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const SubOptions* chosen = nullptr;
    for (const SubOptions& so : subs)
        if (so.app->parsed()) chosen = &so;
    if (!chosen) {
        std::cerr << "error: no experiment selected\n";
        return 2;
    }

    try {
        ExperimentConfig config = assemble(*chosen, staged);
        return circlelab::experiments::run_with_exit_codes(config, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return circlelab::experiments::exit_code_for(e);
    }
}
