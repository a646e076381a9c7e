#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "circlelab/errors.hpp"

namespace circlelab::experiments {

// Configuration rejected before any computation started: unknown experiment
// or family, malformed values, inconsistent field combinations. Maps to the
// usage exit code.
struct UsageError : DomainError {
    using DomainError::DomainError;
};

// One experiment run, fully described. All real-valued fields are decimal
// (or p/q rational) strings so a configuration means the same thing at every
// precision; empty string means "use the family default". The canonical
// text rendering below is the configuration's identity: its hash is embedded
// in every output file.
struct ExperimentConfig {
    // One of: rotnum, crossratio, identities, denjoy, schwarz, conjugacy,
    // schedule.
    std::string experiment;

    // Map descriptor. family is rigid | sine | weierstrass; omega empty
    // means the golden mean; coupling empty means the family default (0.5
    // for sine, half the safe maximum for weierstrass). beta/delta below
    // double as the weierstrass Hoelder exponent and the exponent-schedule
    // parameters, which coincide by construction in the theorem regime.
    std::string family = "sine";
    std::string omega;
    std::string coupling;
    long lambda = 2;
    long terms = 24;

    // Target rotation number: explicit quotient prefix, or a decimal value,
    // or (both empty) the golden mean. tune > 0 re-tunes the map's rotation
    // offset until the measured expansion matches the target to that depth.
    std::vector<long> rho_cf;
    std::string rho;
    long tune = 0;

    // Run geometry. depth is the continued-fraction measurement depth,
    // levels the deepest partition level, samples the per-experiment sample
    // count (points per level, random draws, or conjugacy orbit length),
    // density the orbit length behind density estimates.
    long precision = 256;
    long depth = 20;
    long levels = 8;
    long samples = 64;
    long density = 2000;
    unsigned long long seed = 1;

    // Exponent parameters (exact rationals, "1/5" or "0.2"): required by the
    // schedule experiment and by the denjoy theorem-regime preset, which
    // additionally enforces 0 < beta < delta < 1.
    std::string beta;
    std::string delta;
    bool theorem_regime = false;

    // Output: directory and report format (csv | json). out is deliberately
    // excluded from the canonical text so one configuration hash names one
    // numeric result wherever it is written.
    std::string out = ".";
    std::string format = "csv";

    // Per-experiment defaults (sample counts and measurement depths differ);
    // throws UsageError for an unknown experiment name.
    static ExperimentConfig defaults_for(const std::string& experiment);

    // Self-describing key-value rendering, one field per line, fixed order;
    // "-" stands for an empty (defaulted) value. parse_config_text inverts
    // this exactly.
    std::string canonical_text() const;

    // hex64 FNV-1a fingerprint of canonical_text().
    std::string hash() const;

    // Field-level validation; throws UsageError with a message naming the
    // offending field. Called by run() before any computation.
    void validate() const;
};

// Parses the canonical_text format (unknown keys are UsageErrors, so stale
// configuration files fail loudly).
ExperimentConfig parse_config_text(const std::string& text);

// What a successful run produced.
struct RunResult {
    std::vector<std::string> files;  // paths written, in write order
    std::string summary;             // one human-readable line
};

// Runs one experiment end to end: validate, build and (optionally) tune the
// map, measure the realized rotation number, compute, and write the report
// plus the configuration echo into config.out. Throws on any failure;
// exit_code_for maps the failure taxonomy to process exit codes.
RunResult run(const ExperimentConfig& config);

// Documented exit-code mapping: 2 for configuration/precondition problems,
// 3 for exact-identity verification failures, 4 for exhausted resources,
// 1 for anything unforeseen.
int exit_code_for(const std::exception& e);

// Convenience wrapper used by the command-line driver and tests: runs,
// prints the summary and file list to out or the mapped error to err, and
// returns the process exit code.
int run_with_exit_codes(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace circlelab::experiments
