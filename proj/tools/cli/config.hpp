#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fsum/moduli.hpp"
#include "json.hpp"

namespace fsum::cli {

using Json = nlohmann::ordered_json;

/// Every option of every subcommand. The JSON config file uses the same keys
/// (flag names with '-' replaced by '_'); unknown keys are rejected.
struct RunConfig {
  // Matrix: fejer | lal | norlund | path to an n,k,a CSV.
  std::string matrix = "fejer";
  // Weights for lal/norlund: ones | harmonic | geometric | linear | path to a nu,p CSV.
  std::string p_weights = "ones";
  // Corpus name, path to an x,f CSV, or "corpus" for every member.
  std::string function = "cos";
  // auto | power:a | powerlog:a | path to a delta,omega CSV.
  std::string modulus = "auto";

  double p = 2.0;
  double beta = 0.0;
  std::optional<double> x;
  std::optional<double> gamma;
  bool allow_large_beta = false;

  std::vector<std::size_t> n = {16, 32, 64, 128, 256, 512};
  std::string out = ".";
  unsigned threads = 0;
  std::uint64_t seed = 1;
  Domain domain = Domain::full;

  // classify
  std::string cls = "mrbvs";
  std::string witness;
  std::size_t len = 8;
  std::size_t trials = 100000;

  // kernel
  int lemma = 1;
  std::size_t kmax = 512;
  std::size_t grid = 10000;
  double growth_factor = 1.5;

  // rates
  std::string variant = "auto";
  std::string orientation = "forward";
  bool corollary = false;
  bool suite = false;
  std::vector<double> alpha = {0.3, 0.5, 0.7};
  std::string family = "weierstrass";
  std::optional<double> expect_slope;
  double slope_tolerance = 0.1;

  // conditions
  std::vector<std::string> conditions = {"2.6", "2.7", "2.8", "Q"};
  bool implication = true;

  // corpus
  std::string export_path;
  std::size_t points = 1024;
  std::size_t resolution = 512;
  std::size_t delta_points = 64;

  /// Canonical JSON form; `runtime` adds out and threads.
  Json normalized(bool runtime = true) const;
};

/// Keys accepted in config files, in canonical order.
const std::vector<std::string>& config_keys();

/// Sets one field from a JSON value; strings are coerced for numeric fields
/// so that command-line text and file values share one path. Throws
/// fsum::Error(ParseError) on unknown keys or malformed values.
void set_field(RunConfig& config, const std::string& key, const Json& value);

RunConfig config_from_json(const Json& doc, RunConfig base = {});

/// Enumerations and (p, beta) are checked here so that bad configs fail
/// before any work starts.
void validate_config(const RunConfig& config);

/// "16..512" (doubling), "16,32,64", or "64".
std::vector<std::size_t> parse_n_spec(const std::string& text);

}  // namespace fsum::cli
