#pragma once

#include <cstddef>
#include <vector>

#include "fermipulse/statemodel.hpp"

namespace fermipulse {

/// Classical relative motion of two electrons in their centre-of-mass frame,
/// with relative kinetic energy p^2/m_e (reduced mass m_e/2).
struct CoulombScenario {
  double p0_rel;      // kg m / s
  double x0_rel;      // m
  double L_detector;  // m
  double v_com;       // m / s
  int dims = 1;
  double transverse_factor = 1.0;
  /// Multiplies k_e q_e^2; 0 gives free flight (test hook).
  double coupling = 1.0;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
  double t_detector() const { return L_detector / v_com; }
};

/// p0 = hbar |k0a - k0b|, x0 = 1/(sqrt(2) dk), v_com from the mean beam-axis
/// wavenumber, detector at `detector_x_m`.
CoulombScenario pair_scenario(const SourceEnsemble& ens, double detector_x_m);

/// E0 = p0^2/m_e + k_e q_e^2 / x0, J.
double total_energy(const CoulombScenario& s);

/// p(x) = sqrt(m_e E0 - m_e k_e q_e^2 / x); std::domain_error for x < x0.
double relative_momentum(const CoulombScenario& s, double x);

/// p(infinity) = sqrt(m_e E0).
double terminal_momentum(const CoulombScenario& s);

struct TrajectoryResult {
  double x_det;                   // m
  double p_det;                   // kg m / s
  double t_det;                   // s
  double max_rel_energy_error;    // max |E - E0| / E0 over accepted steps
  std::size_t steps;
};

/// Integrates dx/dt = 2p/m_e, dp/dt = k_e q_e^2 / x^2 from (x0, p0) for
/// t_det = L / v_com with an adaptive Dormand-Prince stepper. Throws
/// std::runtime_error if the integration fails or drifts in energy beyond
/// 1e-9 E0.
TrajectoryResult integrate_relative_motion(const CoulombScenario& s, double rel_tol = 1e-10);

double separation_at_detector(const CoulombScenario& s);

/// Delta x(0) / Delta x(t) = sqrt(alpha(t, dk)).
double dispersion_ratio(double dk, double t);

struct PancakeResult {
  double r0;             // m
  double r_det;          // m
  double quantum_ratio;  // sqrt(alpha(t; dk)) sqrt(alpha(t; dk / factor))
  double coulomb_ratio;  // r0^2 / r_det^2
};

/// Two-dimensional estimate with transverse coherence `transverse_factor`
/// times better than longitudinal.
PancakeResult pancake_comparison(const CoulombScenario& longitudinal, double dk,
                                 double transverse_factor = 10.0);

struct MomentumCurvePoint {
  double x;  // m
  double p;  // kg m / s
};

/// p(x) on n log-spaced separations from x0 to x_max.
std::vector<MomentumCurvePoint> momentum_curve(const CoulombScenario& s, double x_max, std::size_t n);

}  // namespace fermipulse
