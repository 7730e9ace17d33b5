#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "fermipulse/statemodel.hpp"

namespace fermipulse {

/// Outcome of a sequence of pulses seen by one detector that is shut off after
/// its first click. Positions are beam-axis coordinates at emission (t = 0).
struct ClickSample {
  std::vector<double> positions;     // m, one per click, in pulse order
  std::vector<std::uint8_t> clicked; // per pulse: 1 click, 0 null
  std::size_t n_null = 0;
  std::uint64_t seed = 0;

  std::size_t n_pulses() const { return clicked.size(); }
};

/// Draws n_pulses outcomes from the ensemble with std::mt19937_64 seeded by
/// `seed`. Positions come from inverse-CDF sampling of tabulated P1(x, 0)
/// and the two-electron marginal. Throws std::invalid_argument if n_pulses == 0.
ClickSample sample_clicks(const SourceEnsemble& ens, std::size_t n_pulses, std::uint64_t seed);

/// CSV with header `pulse_index,outcome,x_m`; null pulses leave x_m empty.
void write_clicks_csv(const ClickSample& sample, std::ostream& out);

struct FitResult {
  double p0_hat;
  double p1_hat;
  double p2_hat;
  double sse;
  std::size_t n_evals;
  bool unimodal;  // objective had a single local minimum on the 101-point scan
};

struct FitOptions {
  std::size_t bins = 50;
  double half_range_in_inv_dk = 2.0;  // histogram spans +- 2/dk around the centre
};

/// Histogram of click positions over the fit range, as bin probabilities
/// (counts / number of clicks).
struct Histogram {
  double lo;
  double width;
  std::vector<double> fraction;
};

Histogram click_histogram(const ClickSample& sample, double dk, const FitOptions& opt = {});

/// Sum of squared differences between histogram fractions and the model
/// bin masses for a given p1, with p2 = 1 - p0 - p1.
double fit_objective(const Histogram& hist, const SourceEnsemble& shape, double p0, double p1);

/// Fits p1 by Brent's method on [0, 1 - p0] (absolute tolerance below 1e-4)
/// after estimating p0 from the null fraction. Only the packets of `shape`
/// are used. Throws std::invalid_argument for a sample without clicks or one
/// whose clicks fall in a single bin.
FitResult fit_p1(const ClickSample& sample, const SourceEnsemble& shape, const FitOptions& opt = {});

}  // namespace fermipulse
