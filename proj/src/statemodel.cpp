#include "fermipulse/statemodel.hpp"

#include <cmath>
#include <stdexcept>

#include "fermipulse/constants.hpp"

namespace fermipulse {

namespace {

bool all_finite(const Vec3& v) {
  return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

double separation2(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

}  // namespace

GaussianPacket3D::GaussianPacket3D(Vec3 k0, double dk) : k0_(k0), dk_(dk) {
  if (!all_finite(k0)) {
    throw std::invalid_argument("GaussianPacket3D: non-finite k0");
  }
  if (!std::isfinite(dk) || dk <= 0.0) {
    throw std::invalid_argument("GaussianPacket3D: dk must be > 0");
  }
}

TwoElectronPacket::TwoElectronPacket(GaussianPacket3D a, GaussianPacket3D b)
    : a_(a), b_(b), overlap_(0.0), one_minus_overlap2_(1.0) {
  if (a.dk() != b.dk()) {
    throw std::invalid_argument("TwoElectronPacket: packets must share dk");
  }
  const double s2 = separation2(a.k0(), b.k0()) / (a.dk() * a.dk());
  if (s2 == 0.0) {
    throw std::invalid_argument("TwoElectronPacket: packet centres must differ");
  }
  overlap_ = std::exp(-s2 / 8.0);
  one_minus_overlap2_ = -std::expm1(-s2 / 4.0);
}

double TwoElectronPacket::n_plus() const {
  return 1.0 / std::sqrt(2.0 * (1.0 + overlap_ * overlap_));
}

double TwoElectronPacket::n_minus() const {
  return 1.0 / std::sqrt(2.0 * one_minus_overlap2_);
}

PairAxis TwoElectronPacket::axis(int i) const {
  const double ka = a_.axis(i).k0;
  const double kb = b_.axis(i).k0;
  const double s2 = (ka - kb) * (ka - kb) / (dk() * dk());
  return {ka, kb, dk(), std::exp(-s2 / 8.0), -std::expm1(-s2 / 4.0)};
}

double overlap(const TwoElectronPacket& pair) { return pair.overlap(); }

Normalizations normalizations(const TwoElectronPacket& pair) {
  return {pair.n_plus(), pair.n_minus()};
}

DetectorWindow DetectorWindow::make(Vec3 center, Vec3 half_width) {
  if (!all_finite(center) || !all_finite(half_width)) {
    throw std::invalid_argument("DetectorWindow: non-finite geometry");
  }
  for (double h : half_width) {
    if (h <= 0.0) {
      throw std::invalid_argument("DetectorWindow: half widths must be > 0");
    }
  }
  return {center, half_width};
}

DetectorWindow DetectorWindow::phase_cell(Vec3 center, double dk) {
  const double h = 0.5 / dk;
  return make(center, {h, h, h});
}

SourceEnsemble SourceEnsemble::make(double p1, double p2, GaussianPacket3D one_el,
                                    TwoElectronPacket two_el) {
  if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0)) {
    throw std::invalid_argument("SourceEnsemble: p1 and p2 must lie in [0, 1]");
  }
  if (p1 + p2 > 1.0 + 1e-12) {
    throw std::invalid_argument("SourceEnsemble: p1 + p2 exceeds 1");
  }
  const double p0 = std::max(0.0, 1.0 - p1 - p2);
  return {p0, p1, p2, one_el, two_el};
}

SourceEnsemble make_ensemble(const SourceParameters& params) {
  const double k0 = energy_to_wavenumber(params.E0_eV);
  const double dk = energy_spread_to_dk(params.dE_eV, k0);
  GaussianPacket3D a({k0, 0.0, 0.0}, dk);
  GaussianPacket3D b({k0 - params.k_offset_in_dk * dk, 0.0, 0.0}, dk);
  return SourceEnsemble::make(params.p1, params.p2, a, TwoElectronPacket(a, b));
}

SourceEnsemble default_ensemble() { return make_ensemble(SourceParameters{}); }

DetectorWindow make_detector(const SourceParameters& params, double dk) {
  const Vec3 center{params.detector_x_m, 0.0, 0.0};
  if (params.halfwidth_mode == HalfWidthMode::PhaseCell) {
    return DetectorWindow::phase_cell(center, dk);
  }
  return DetectorWindow::make(center, params.detector_halfwidth_m);
}

DetectorWindow source_window(double dk) { return DetectorWindow::phase_cell({0.0, 0.0, 0.0}, dk); }

}  // namespace fermipulse
