#pragma once

#include <string>

#include "circlelab/circlemap.hpp"

namespace circlelab::circlemap {

// Persists an orbit cache: a small text header (family tag, parameters as
// decimal strings with their precision, precision bits, length), followed by
// one fixed-width hex mantissa/exponent record per point. Round trips are
// bit-exact, including the map parameters.
//
// Throws ResourceError on I/O failure and DomainError when the cache mixes
// precisions (seed and points must sit at the cache's working precision).
void save_orbit(const OrbitCache& orbit, const std::string& path);

// Reads a file written by save_orbit and rebuilds the cache, re-validating
// the map parameters. Throws ResourceError on I/O failure, DomainError on a
// malformed or inconsistent file.
OrbitCache load_orbit(const std::string& path);

}  // namespace circlelab::circlemap
