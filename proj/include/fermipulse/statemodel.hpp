#pragma once

#include <array>

namespace fermipulse {

using Vec3 = std::array<double, 3>;

enum class Symmetry { Symmetric, Antisymmetric };

/// Mean wavenumber and spread of one packet along a single axis.
struct PacketAxis {
  double k0;  // m^-1
  double dk;  // m^-1
};

/// Momentum-space Gaussian with isotropic spread,
/// C(k) = prod_axes (2 pi dk^2)^(-1/4) exp(-(k - k0)^2 / (4 dk^2)).
class GaussianPacket3D {
 public:
  /// Throws std::invalid_argument unless dk > 0 and all components are finite.
  GaussianPacket3D(Vec3 k0, double dk);

  const Vec3& k0() const { return k0_; }
  double dk() const { return dk_; }
  PacketAxis axis(int i) const { return {k0_.at(static_cast<std::size_t>(i)), dk_}; }

 private:
  Vec3 k0_;
  double dk_;
};

/// Projection of a two-electron pair on one axis. `overlap` is the 1D
/// overlap of the projected packets.
struct PairAxis {
  double ka;  // m^-1
  double kb;  // m^-1
  double dk;  // m^-1
  double overlap;
  double one_minus_overlap2;
};

/// Ordered pair of packets with equal spreads and distinct centres.
class TwoElectronPacket {
 public:
  /// Throws std::invalid_argument if the spreads differ or the centres
  /// coincide (N_minus would diverge).
  TwoElectronPacket(GaussianPacket3D a, GaussianPacket3D b);

  const GaussianPacket3D& a() const { return a_; }
  const GaussianPacket3D& b() const { return b_; }
  double dk() const { return a_.dk(); }

  /// <psi|phi> = exp(-|k0a - k0b|^2 / (8 dk^2)).
  double overlap() const { return overlap_; }
  /// 1 - overlap^2, computed without cancellation.
  double one_minus_overlap2() const { return one_minus_overlap2_; }
  double n_plus() const;
  double n_minus() const;
  PairAxis axis(int i) const;

 private:
  GaussianPacket3D a_;
  GaussianPacket3D b_;
  double overlap_;
  double one_minus_overlap2_;
};

struct Normalizations {
  double n_plus;
  double n_minus;
};

double overlap(const TwoElectronPacket& pair);
Normalizations normalizations(const TwoElectronPacket& pair);

/// Axis-aligned detection box.
struct DetectorWindow {
  Vec3 center;      // m
  Vec3 half_width;  // m

  /// Throws std::invalid_argument for non-positive half widths.
  static DetectorWindow make(Vec3 center, Vec3 half_width);
  /// Box of full width 1/dk per axis around `center`.
  static DetectorWindow phase_cell(Vec3 center, double dk);

  double lo(int i) const { return center.at(static_cast<std::size_t>(i)) - half_width.at(static_cast<std::size_t>(i)); }
  double hi(int i) const { return center.at(static_cast<std::size_t>(i)) + half_width.at(static_cast<std::size_t>(i)); }
};

/// Mixture of vacuum, one-electron and two-electron emission (N_max = 2).
struct SourceEnsemble {
  double p0;
  double p1;
  double p2;
  GaussianPacket3D one_el;
  TwoElectronPacket two_el;

  /// p0 = 1 - p1 - p2. Throws std::invalid_argument for probabilities outside
  /// [0, 1] or a sum above 1 (beyond 1e-12).
  static SourceEnsemble make(double p1, double p2, GaussianPacket3D one_el, TwoElectronPacket two_el);
};

enum class HalfWidthMode { PhaseCell, Explicit };

/// Physical set-up in user units. Every default is the canonical 400 eV,
/// 1 eV nanotip configuration.
struct SourceParameters {
  double E0_eV = 400.0;
  double dE_eV = 1.0;
  double k_offset_in_dk = 0.5;  // k0b_x = k0a_x - offset * dk
  double p1 = 0.5;
  double p2 = 0.1;
  double detector_x_m = 0.1;
  HalfWidthMode halfwidth_mode = HalfWidthMode::PhaseCell;
  Vec3 detector_halfwidth_m{0.0, 0.0, 0.0};  // used in Explicit mode
};

SourceEnsemble make_ensemble(const SourceParameters& params);
SourceEnsemble default_ensemble();

/// Detector window from the parameters (phase cell uses the source dk).
DetectorWindow make_detector(const SourceParameters& params, double dk);
/// Phase-cell window centred on the source at the origin.
DetectorWindow source_window(double dk);

}  // namespace fermipulse
