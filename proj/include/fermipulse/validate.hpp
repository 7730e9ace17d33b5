#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fermipulse/config.hpp"

namespace fermipulse {

/// Outcome of one closed-form vs oracle comparison family.
struct CheckResult {
  std::string name;
  std::size_t points = 0;
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;  // relative to the oracle value
  double worst_at = 0.0;     // sweep coordinate of the largest excess
  double rel_tol = 0.0;
  double abs_floor = 0.0;
  bool passed = false;
  double seconds = 0.0;
  std::string error;  // exception text, if the check threw
};

struct ValidateOptions {
  std::size_t sweep_points = 9;      // figure 1-4 times sampled per check
  std::size_t density_points = 1000;  // one-electron density samples
  std::size_t fig5_points = 21;
  std::vector<std::string> only;  // run only these checks when non-empty
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Names of every check, in execution order.
std::vector<std::string> validation_check_names();

/// Closed forms against the quadrature oracle over samples of all six
/// figure sweeps, plus Pauli zeros and normalizations. A check that throws
/// is recorded as failed.
ValidationReport run_validation(const RunConfig& cfg, const ValidateOptions& opt = {});

/// Machine-readable summary.
std::string validation_json(const ValidationReport& report, const RunConfig& cfg);

}  // namespace fermipulse
