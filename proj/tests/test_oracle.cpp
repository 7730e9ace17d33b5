#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "fermipulse/constants.hpp"
#include "fermipulse/degeneracy.hpp"
#include "fermipulse/detection.hpp"
#include "fermipulse/oracle.hpp"
#include "reference_values.hpp"

using namespace fermipulse;
namespace o = fermipulse::oracle;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

double constants_x(double k0, double t) { return constants::hbar * k0 * t / constants::electron_mass; }

}  // namespace

TEST_CASE("oracle amplitude against the closed form") {
  const double t = ref::t_arrival + 3e-12;
  for (double dx : {0.0, 2e-5, -1e-4}) {
    const double x = constants_x(ref::k0, t) + dx;
    CHECK(rel(o::quadrature_envelope(ref::k0, ref::dk, x, t), packet_envelope(ref::k0, ref::dk, x, t)) < 1e-9);
  }
  // t = 0 source point, full amplitude including the carrier
  CHECK(rel(o::quadrature_amplitude(ref::k0, ref::dk, 1e-9, 0.0), packet_amplitude(ref::k0, ref::dk, 1e-9, 0.0)) <
        1e-10);
}

TEST_CASE("oracle convergence under refinement") {
  const double t = 1e-10;
  const double x = constants_x(ref::k0, t) + 1e-7;
  o::QuadratureSpec coarse;
  o::QuadratureSpec fine = coarse;
  fine.n_k *= 4;
  fine.k_halfwidth_in_dk = 13.0;
  const Complex a = o::quadrature_envelope(ref::k0, ref::dk, x, t, coarse);
  const Complex b = o::quadrature_envelope(ref::k0, ref::dk, x, t, fine);
  CHECK(rel(a, b) < 10 * coarse.rel_tol);
  CHECK(o::panel_count(ref::dk, 0.0, ref::t_arrival, coarse) > o::panel_count(ref::dk, 0.0, 0.0, coarse));
}

TEST_CASE("oracle window masses") {
  const double h = 0.5 / ref::dk;
  CHECK(o::quadrature_density(-h, h, 0.0, ref::dk, 0.0) == doctest::Approx(ref::erf_inv_sqrt2).epsilon(1e-10));
  CHECK(o::quadrature_density(0.1 - h, 0.1 + h, ref::k0, ref::dk, ref::t_arrival) ==
        doctest::Approx(ref::det_d1_axis_0).epsilon(1e-8));
  const auto ens = default_ensemble();
  const auto src = source_window(ref::dk);
  const auto d = o::quadrature_degeneracy2(src, ens.two_el, 0.0);
  CHECK(d.sym == doctest::Approx(ref::src_d2_sym_3d).epsilon(1e-9));
  CHECK(d.antisym == doctest::Approx(ref::src_d2_antisym_3d).epsilon(1e-9));
  CHECK(o::quadrature_density(src, ens.one_el, 0.0) == doctest::Approx(ref::src_d1_3d).epsilon(1e-9));
}

TEST_CASE("oracle overlap and normalisation") {
  const auto ens = default_ensemble();
  CHECK(o::quadrature_overlap(ens.two_el) == doctest::Approx(ref::overlap).epsilon(1e-12));
  CHECK(o::quadrature_total_mass(ref::k0, ref::dk, 0.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(o::quadrature_total_mass(ref::k0, ref::dk, 1e-12) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("oracle two-electron points") {
  const auto pair = default_ensemble().two_el.axis(0);
  CHECK(o::quadrature_density2(Symmetry::Antisymmetric, pair, 2e-9, 0.0, 2e-9, 0.0) <= 1e-18);
  CHECK(o::quadrature_density2(Symmetry::Antisymmetric, pair, 0.1, ref::fig5_t, 0.1, ref::fig5_t) <= 1e-18);
  const double x2 = 0.1 + 5e-5;
  CHECK(o::quadrature_density2(Symmetry::Symmetric, pair, 0.1, ref::fig5_t, x2, ref::fig5_t) ==
        doctest::Approx(ref::fig5_P_sym).epsilon(1e-8));
  CHECK(o::quadrature_density2(Symmetry::Antisymmetric, pair, 0.1, ref::fig5_t, x2, ref::fig5_t) ==
        doctest::Approx(ref::fig5_P_antisym).epsilon(1e-8));
  const auto j = joint_density_t0(pair, -1e-9, 3e-9);
  CHECK(o::quadrature_density2(Symmetry::Symmetric, pair, -1e-9, 0.0, 3e-9, 0.0) ==
        doctest::Approx(j.sym).epsilon(1e-10));
}

TEST_CASE("oracle rejects bad specs") {
  o::QuadratureSpec s;
  s.n_k = 4;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = {};
  s.rel_tol = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  CHECK_THROWS_AS(o::quadrature_density(1.0, 0.0, ref::k0, ref::dk, 0.0), std::invalid_argument);
}
