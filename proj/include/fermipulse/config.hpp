#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>

#include "fermipulse/oracle.hpp"
#include "fermipulse/statemodel.hpp"

namespace fermipulse {

/// Malformed config text, unknown key or out-of-range value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a CLI run depends on. Grid bounds left as NaN are derived from
/// the physics (transit window, arrival time, detector separation).
struct RunConfig {
  SourceParameters source;

  double t_min_s;  // figs 1-4 time grid
  double t_max_s;
  std::size_t n_t = 2001;

  double x_min_m;  // fig 5 sweep of the second detector position
  double x_max_m;
  std::size_t n_x = 2001;
  double fig5_t_s;  // both detection times; default: pair arrival at x1

  double fig6_x_max_m;  // default: separation at the detector
  std::size_t fig6_n = 400;

  double transverse_factor = 10.0;

  double oracle_rel_tol = 1e-9;
  double oracle_k_halfwidth_in_dk = 11.0;
  std::size_t oracle_n_k = 4096;
  std::size_t oracle_n_x = 4096;
  double interference_scale = 1.0;

  std::string output_dir;
  bool emit_plot_script = false;

  RunConfig();

  oracle::QuadratureSpec quadrature_spec() const;
  /// Throws ConfigError when grids have fewer than 2 points, bounds are
  /// inverted, or the ensemble is invalid.
  void validate() const;
};

/// Parses `key = value` lines; `#` starts a comment. Unknown keys and
/// malformed values throw ConfigError naming the line.
RunConfig parse_config(std::istream& in, RunConfig base = RunConfig{});
RunConfig load_config(const std::string& path);

/// Sorted `key=value` listing of every setting that affects outputs.
std::string canonical_config(const RunConfig& cfg);
/// FNV-1a 64-bit hash of canonical_config, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

}  // namespace fermipulse
