#pragma once

// JSON and text renderings of results, and run manifests.

#include <string>
#include <string_view>
#include <vector>

#include "blspec/spectrum.hpp"

namespace blspec {

std::string version();

// {system, n_range, windows, B, Bprime, complexity_floor}. An estimate with
// no windows renders the exact values only.
std::string spectrum_to_json(const SpectrumEstimate& est);

// {family, max_period, max_digit, values: [{exact, decimal}]}; decimals
// have 12 fractional digits.
std::string scan_to_json(std::string_view family, std::size_t max_period, Quotient max_digit,
                         const std::vector<QuadraticSurd>& values);

// "n midpoint" lines from an e_n CSV, midpoints of the 1/(n e_n) enclosure;
// a third column with the enclosure width is added when some row has no
// exact value. Throws ParseError on malformed input.
std::string plotdata_from_csv(std::string_view csv);

struct RunManifest {
  std::string command_line;
  std::string system;
  std::size_t n_max = 0;
  std::size_t level_cap = 0;
  std::string rel_tol;
  std::string version;
  std::string output_digest;
};

std::string manifest_to_json(const RunManifest& m);

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

}  // namespace blspec
