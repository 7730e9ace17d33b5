#pragma once

#include <cstdint>
#include <vector>

#include "fermipulse/specfun.hpp"
#include "fermipulse/statemodel.hpp"

namespace fermipulse {

/// Degeneracy at one instant, all components dimensionless.
struct DegeneracyBreakdown {
  double t;
  double d1_3d;
  double d2_sym_3d;
  double d2_antisym_3d;
  double d2_total_3d;
  double d_total;
};

/// Test hook: scales the overlap-weighted interference term. Anything other
/// than 1 produces wrong physics and exists only for mutation tests.
struct TwoElectronOptions {
  double interference_scale = 1.0;
};

/// alpha(t) = m^2 / (m^2 + 4 hbar^2 dk^4 t^2); width grows as 1/sqrt(alpha).
double alpha(double t, double dk);

/// Group-velocity arrival time x m / (hbar k0).
double arrival_time(double x, double k0);

/// Probability mass of a dispersing 1D packet inside [x_lo, x_hi] at time t.
double delta1_axis(double x_lo, double x_hi, double k0, double dk, double t);
double delta1_3d(const DetectorWindow& det, const GaussianPacket3D& p, double t);

double xi1(double x, double t, double k, double dk);
Complex xi2(double x, double t, double k1, double k2, double dk);
Complex theta2(double x, double t, double k1, double k2, double dk);

/// delta_xi + delta_theta over [x_lo, x_hi], i.e. half the window differences
/// of xi2 and theta2. Throws std::logic_error if the imaginary residual of the
/// conjugate-pair sum exceeds 1e-12 of its magnitude.
double interference_axis(double x_lo, double x_hi, const PairAxis& pair, double t);

double delta2_axis(Symmetry sym, double x_lo, double x_hi, const PairAxis& pair, double t,
                   const TwoElectronOptions& opt = {});
double delta2_3d(Symmetry sym, const DetectorWindow& det, const TwoElectronPacket& pair, double t,
                 const TwoElectronOptions& opt = {});
double delta2_total_3d(const DetectorWindow& det, const TwoElectronPacket& pair, double t,
                       const TwoElectronOptions& opt = {});

DegeneracyBreakdown delta_total(const SourceEnsemble& ens, const DetectorWindow& det, double t,
                                const TwoElectronOptions& opt = {});

/// Number of slightly negative results (>= -1e-10) clamped to zero so far.
std::uint64_t clamped_negative_count();

/// Transit time scale (1/dk) m / (hbar k0) / sqrt(alpha(t_arr)).
double transit_sigma(double x, double k0, double dk);
/// Uniform grid over t_arr +- 5 sigma_t.
std::vector<double> transit_time_grid(double x, double k0, double dk, std::size_t n = 2001);

/// Interior dip of a sampled curve: the lowest local minimum that has a
/// local maximum on each side.
struct DipAnalysis {
  bool found = false;
  double t_min = 0.0;
  double value_min = 0.0;
  double t_left_max = 0.0;
  double t_right_max = 0.0;
  double value_left_max = 0.0;
  double value_right_max = 0.0;
  /// Full width at half depth, depth measured from the lower flanking maximum.
  double fwhm = 0.0;
  double maxima_separation = 0.0;
};

DipAnalysis analyze_dip(const std::vector<double>& t, const std::vector<double>& v);

struct PeakResult {
  double t;
  double value;
};

/// Maximum of delta1_3d over time near the arrival at the window centre,
/// refined by Brent's method from the best grid sample.
PeakResult peak_delta1_3d(const DetectorWindow& det, const GaussianPacket3D& p);

}  // namespace fermipulse
