#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "fermipulse/constants.hpp"
#include "fermipulse/statemodel.hpp"
#include "reference_values.hpp"

using namespace fermipulse;

TEST_CASE("energy conversions") {
  const double k0 = energy_to_wavenumber(400.0);
  CHECK(k0 == doctest::Approx(ref::k0).epsilon(1e-14));
  CHECK(wavenumber_to_energy(k0) == doctest::Approx(400.0).epsilon(1e-14));
  CHECK(energy_spread_to_dk(1.0, k0) == doctest::Approx(ref::dk).epsilon(1e-14));
  // the rounded pair quoted for the canonical source
  CHECK(k0 == doctest::Approx(1.024e11).epsilon(1e-3));
  CHECK(energy_spread_to_dk(1.0, k0) == doctest::Approx(1.28e8).epsilon(1e-3));
  CHECK_THROWS_AS(energy_to_wavenumber(-1.0), std::domain_error);
}

TEST_CASE("default ensemble") {
  const auto ens = default_ensemble();
  CHECK(ens.p0 == doctest::Approx(0.4));
  CHECK(ens.one_el.k0()[0] == doctest::Approx(ref::k0).epsilon(1e-14));
  CHECK(ens.one_el.k0()[1] == 0.0);
  CHECK(ens.two_el.a().k0()[0] - ens.two_el.b().k0()[0] == doctest::Approx(0.5 * ref::dk).epsilon(1e-6));
  CHECK(ens.two_el.overlap() == doctest::Approx(ref::overlap).epsilon(1e-14));
  CHECK(ens.two_el.one_minus_overlap2() == doctest::Approx(1.0 - ref::overlap * ref::overlap).epsilon(1e-12));
}

TEST_CASE("overlap and normalisation") {
  const double dk = 1e8;
  const GaussianPacket3D a({1e11, 0.0, 0.0}, dk);
  const GaussianPacket3D b({1e11 - 2.0 * dk, dk, 0.0}, dk);
  const TwoElectronPacket pair(a, b);
  // |dk0|^2 = 5 dk^2
  CHECK(overlap(pair) == doctest::Approx(std::exp(-5.0 / 8.0)).epsilon(1e-15));
  const auto n = normalizations(pair);
  const double ov = overlap(pair);
  CHECK(n.n_plus == doctest::Approx(1.0 / std::sqrt(2.0 * (1.0 + ov * ov))));
  CHECK(n.n_minus == doctest::Approx(1.0 / std::sqrt(2.0 * (1.0 - ov * ov))));
  CHECK(pair.axis(0).overlap * pair.axis(1).overlap * pair.axis(2).overlap == doctest::Approx(ov));

  // nearly coincident centres: 1 - ov^2 without cancellation
  const GaussianPacket3D c({1e11 - 1e-6 * dk, 0.0, 0.0}, dk);
  const TwoElectronPacket close(a, c);
  CHECK(close.one_minus_overlap2() == doctest::Approx(1e-12 / 4.0).epsilon(1e-6));
}

TEST_CASE("invalid states are rejected") {
  CHECK_THROWS_AS(GaussianPacket3D({0.0, 0.0, 0.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(GaussianPacket3D({NAN, 0.0, 0.0}, 1.0), std::invalid_argument);
  const GaussianPacket3D a({1.0, 0.0, 0.0}, 1.0);
  CHECK_THROWS_AS(TwoElectronPacket(a, a), std::invalid_argument);
  CHECK_THROWS_AS(TwoElectronPacket(a, GaussianPacket3D({2.0, 0.0, 0.0}, 2.0)), std::invalid_argument);
  const TwoElectronPacket pair(a, GaussianPacket3D({2.0, 0.0, 0.0}, 1.0));
  CHECK_THROWS_AS(SourceEnsemble::make(0.7, 0.4, a, pair), std::invalid_argument);
  CHECK_THROWS_AS(SourceEnsemble::make(-0.1, 0.4, a, pair), std::invalid_argument);
  CHECK(SourceEnsemble::make(0.0, 0.0, a, pair).p0 == 1.0);
  CHECK_THROWS_AS(DetectorWindow::make({0, 0, 0}, {1.0, 0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("phase-cell detector") {
  const auto w = DetectorWindow::phase_cell({0.1, 0.0, 0.0}, ref::dk);
  for (int i = 0; i < 3; ++i) {
    CHECK(2.0 * w.half_width[static_cast<std::size_t>(i)] * ref::dk == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(w.center[0] == 0.1);
  SourceParameters p;
  p.halfwidth_mode = HalfWidthMode::Explicit;
  p.detector_halfwidth_m = {1e-6, 2e-6, 3e-6};
  const auto e = make_detector(p, ref::dk);
  CHECK(e.half_width[2] == 3e-6);
}
