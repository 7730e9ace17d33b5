#pragma once

#include <cstddef>

#include "fermipulse/specfun.hpp"
#include "fermipulse/statemodel.hpp"

namespace fermipulse::oracle {

// Brute-force reference built directly from the momentum-space
// superposition, with no use of the closed forms it is meant to check.

struct QuadratureSpec {
  double k_halfwidth_in_dk = 11.0;  // amplitude tail beyond: erfc(5.5) ~ 7e-15
  std::size_t n_k = 4096;  // minimum k nodes; raised to resolve the chirp
  std::size_t n_x = 4096;  // nodes for unbounded position integrals
  double rel_tol = 1e-9;

  /// Throws std::invalid_argument unless n_k, n_x >= 16, rel_tol > 0 and the
  /// k half width is positive.
  void validate() const;
};

/// (1/sqrt(2 pi)) int C(k) exp(i k x - i hbar k^2 t / 2m) dk with the plane
/// wave exp(i (k0 x - hbar k0^2 t / 2m)) factored out. Every call is
/// repeated with twice the panels; a change beyond rel_tol throws
/// std::runtime_error.
Complex quadrature_envelope(double k0, double dk, double x, double t, const QuadratureSpec& spec = {});

/// Full amplitude, envelope times carrier.
Complex quadrature_amplitude(double k0, double dk, double x, double t, const QuadratureSpec& spec = {});

/// Number of k panels used for one envelope evaluation (before doubling).
std::size_t panel_count(double dk, double x_minus_center, double t, const QuadratureSpec& spec);

/// int_C(k_a) C(k_b) dk on one axis by composite quadrature.
double quadrature_overlap_axis(double ka, double kb, double dk, const QuadratureSpec& spec = {});
double quadrature_overlap(const TwoElectronPacket& pair, const QuadratureSpec& spec = {});

/// int_[x_lo, x_hi] |amplitude|^2 dx by adaptive Gauss-Legendre to rel_tol.
double quadrature_density(double x_lo, double x_hi, double k0, double dk, double t,
                          const QuadratureSpec& spec = {});
/// Product over axes of the 1D window masses.
double quadrature_density(const DetectorWindow& det, const GaussianPacket3D& p, double t,
                          const QuadratureSpec& spec = {});

/// Mass of |amplitude|^2 over centre +- 12 widths with n_x composite nodes.
double quadrature_total_mass(double k0, double dk, double t, const QuadratureSpec& spec = {});

/// Pointwise two-electron density |N (A_a(1) A_b(2) +- A_b(1) A_a(2))|^2 from
/// quadrature amplitudes (m^-2).
double quadrature_density2(Symmetry sym, const PairAxis& pair, double x1, double t1, double x2,
                           double t2, const QuadratureSpec& spec = {});

/// Expected electron number of the two-electron state inside [x_lo, x_hi]
/// (1D, both electrons on this axis).
double quadrature_density2(Symmetry sym, double x_lo, double x_hi, const PairAxis& pair, double t,
                           const QuadratureSpec& spec = {});

/// Expected electron number of the two-electron state inside a 3D window.
double quadrature_density2(Symmetry sym, const DetectorWindow& det, const TwoElectronPacket& pair,
                           double t, const QuadratureSpec& spec = {});

struct Degeneracy2 {
  double sym;
  double antisym;
};

/// Both symmetries from one set of window integrals.
Degeneracy2 quadrature_degeneracy2(const DetectorWindow& det, const TwoElectronPacket& pair, double t,
                                   const QuadratureSpec& spec = {});

}  // namespace fermipulse::oracle
