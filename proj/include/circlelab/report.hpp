#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include <json.hpp>

namespace circlelab::report {

// 64-bit FNV-1a over the raw bytes; used to fingerprint configurations so
// every report can state exactly which configuration produced it.
std::uint64_t fnv1a64(std::string_view bytes);

// Fixed-width lowercase hex rendering (16 digits) of a 64-bit hash.
std::string hex64(std::uint64_t h);

// Current wall-clock time as "YYYY-MM-DDTHH:MM:SSZ" (UTC). This is the one
// line of any report that is allowed to differ between reruns.
std::string iso_timestamp();

// Provenance block embedded in every report: enough to re-run and to match
// outputs to configurations without guessing.
struct Provenance {
    std::string experiment;
    std::string config_hash;  // hex64 of the canonical configuration text
    long precision_bits = 0;
    std::string map_descriptor;          // human-readable family + parameters
    std::string rho_decimal;             // realized rotation number ("" = no map)
    std::vector<mpz_class> rho_cf;       // continued-fraction prefix of the same
    std::string timestamp;

    // "# key: value" comment lines for CSV-style reports, timestamp last.
    std::string csv_comment_block() const;
    // The same fields as leading members of a JSON report object.
    void add_to(nlohmann::ordered_json& j) const;
};

// Writes content to path via a temporary file in the same directory followed
// by an atomic rename, creating parent directories as needed. Readers never
// observe a half-written report. Throws ResourceError on filesystem failure.
void write_file_atomic(const std::string& path, const std::string& content);

// Slurps a whole file; throws ResourceError when unreadable.
std::string read_file(const std::string& path);

// Report-comparison helper: the content with every line containing the
// timestamp marker removed. Two runs of one configuration must agree
// byte-for-byte on this view.
std::string strip_timestamp_lines(const std::string& content);

}  // namespace circlelab::report
