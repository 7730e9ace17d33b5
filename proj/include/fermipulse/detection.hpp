#pragma once

#include "fermipulse/specfun.hpp"
#include "fermipulse/statemodel.hpp"

namespace fermipulse {

/// Free 1D Gaussian packet amplitude, m^(-1/2):
///   psi = (2 pi dk^2)^(-1/4) (2a)^(-1/2) exp(-u^2 / (4a)) exp(i (k0 x - hbar k0^2 t / 2m))
/// with a = 1/(4 dk^2) + i hbar t / (2m) and u = x - hbar k0 t / m.
Complex packet_amplitude(double k0, double dk, double x, double t);

/// packet_amplitude without the plane-wave carrier exp(i (k0 x - hbar k0^2 t / 2m)).
Complex packet_envelope(double k0, double dk, double x, double t);

/// One-electron density P1(x, t), m^-1.
double p1_density(const PacketAxis& p, double x, double t);

struct JointDensity {
  double sym;      // m^-2
  double antisym;  // m^-2
  double total;    // 1/4 sym + 3/4 antisym
};

struct MarginalDensity {
  double sym;  // m^-1
  double antisym;
  double total;
};

/// Equal-time joint density at emission (t = 0).
JointDensity joint_density_t0(const PairAxis& pair, double x1, double x2);

/// Joint density for detections at (x1, t1) and (x2, t2) from the
/// symmetrised product of freely dispersing amplitudes.
JointDensity joint_density(const PairAxis& pair, double x1, double t1, double x2, double t2);

/// Single-detector marginal of the t = 0 joint density.
MarginalDensity marginal_density(const PairAxis& pair, double x);

/// Unnormalised one-click density p1 P1(x, 0) + p2 P(x), beam axis.
double one_click_mixture(const SourceEnsemble& ens, double x);

}  // namespace fermipulse
