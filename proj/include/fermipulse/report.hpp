#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fermipulse/config.hpp"

namespace fermipulse {

struct Column {
  std::string name;
  std::string unit;  // "1" for dimensionless
};

/// One figure's worth of sampled data.
struct Table {
  std::string id;     // file stem, e.g. "fig1"
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool log_x = false;
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
};

/// CSV with a provenance comment (tool version, config hash), a units
/// comment and a header row; numbers in %.16e (17 significant digits).
void write_csv(const Table& table, const RunConfig& cfg, std::ostream& out);

/// gnuplot script plotting every data column of `csv_name` against the first.
std::string plot_script(const Table& table, const std::string& csv_name);

/// Time grid for figures 1-4: the configured range or t_arr +- 5 sigma_t.
std::vector<double> figure_time_grid(const RunConfig& cfg);
/// Default detection time of figure 5: arrival of the pair's mean wavenumber.
double fig5_time(const RunConfig& cfg);

/// Figure n in 1..6; std::invalid_argument otherwise.
Table figure_table(int n, const RunConfig& cfg);

struct ScalarResult {
  std::string name;
  std::string unit;
  double value;
  double reference;  // NaN when informational
  double lo;         // accepted range
  double hi;
  std::string status;  // PASS, FAIL, INFO or SKIP
};

/// Source degeneracy, detector peak, dip width and the Coulomb / dispersion
/// estimates, each flagged against its documented acceptance range.
std::vector<ScalarResult> compute_scalars(const RunConfig& cfg);
void write_scalars(const std::vector<ScalarResult>& scalars, const RunConfig& cfg, std::ostream& out);

}  // namespace fermipulse
