#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <functional>

#include "fermipulse/constants.hpp"
#include "fermipulse/degeneracy.hpp"
#include "fermipulse/detection.hpp"
#include "fermipulse/quadrature.hpp"
#include "reference_values.hpp"

using namespace fermipulse;

namespace {

const PairAxis& pair() {
  static const PairAxis p = default_ensemble().two_el.axis(0);
  return p;
}

double integrate(const std::function<double(double)>& f, double lo, double hi) {
  quadrature::AdaptiveOptions opt;
  opt.rel_tol = 1e-13;
  return quadrature::integrate_adaptive<double>(f, lo, hi, opt);
}

}  // namespace

TEST_CASE("amplitude reduces to the t = 0 Gaussian") {
  const double x = 0.3 / ref::dk;
  const Complex psi = packet_amplitude(ref::k0, ref::dk, x, 0.0);
  const double mod2 = std::sqrt(2.0 / M_PI) * ref::dk * std::exp(-2.0 * ref::dk * ref::dk * x * x);
  CHECK(std::norm(psi) == doctest::Approx(mod2).epsilon(1e-14));
  CHECK(std::arg(psi) == doctest::Approx(std::remainder(ref::k0 * x, 2.0 * M_PI)).epsilon(1e-9));
  CHECK(std::norm(packet_envelope(ref::k0, ref::dk, x, 0.0)) == doctest::Approx(mod2).epsilon(1e-14));
}

TEST_CASE("one-electron density is normalised at every time") {
  for (double t : {0.0, 1e-12, 1e-10, ref::t_arrival}) {
    const double c = constants::hbar * ref::k0 * t / constants::electron_mass;
    const double w = 12.0 / (2.0 * ref::dk * std::sqrt(alpha(t, ref::dk)));
    const double m = integrate([&](double x) { return p1_density({ref::k0, ref::dk}, x, t); }, c - w, c + w);
    CHECK(m == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("joint density at t = 0: both routes agree") {
  for (double x1 : {-2e-9, 0.0, 3e-9}) {
    for (double x2 : {-5e-9, 1e-9, 4e-9}) {
      const auto a = joint_density_t0(pair(), x1, x2);
      const auto b = joint_density(pair(), x1, 0.0, x2, 0.0);
      CHECK(a.sym == doctest::Approx(b.sym).epsilon(1e-12));
      CHECK(a.antisym == doctest::Approx(b.antisym).epsilon(1e-10));
      CHECK(a.total == doctest::Approx(0.25 * a.sym + 0.75 * a.antisym));
    }
  }
}

TEST_CASE("Pauli zero and exchange symmetry") {
  for (double x : {-3e-9, 0.0, 1e-9, 7e-9}) {
    CHECK(joint_density_t0(pair(), x, x).antisym == 0.0);
    CHECK(joint_density(pair(), 0.1 + x, ref::fig5_t, 0.1 + x, ref::fig5_t).antisym <= 1e-18);
    const auto p = joint_density_t0(pair(), x, 2e-9);
    const auto q = joint_density_t0(pair(), 2e-9, x);
    CHECK(p.sym == doctest::Approx(q.sym).epsilon(1e-15));
    CHECK(p.antisym == doctest::Approx(q.antisym).epsilon(1e-15));
  }
}

TEST_CASE("figure 5 point matches the frozen amplitude product") {
  const auto j = joint_density(pair(), 0.1, ref::fig5_t, 0.1 + 5e-5, ref::fig5_t);
  CHECK(j.sym == doctest::Approx(ref::fig5_P_sym).epsilon(1e-8));
  CHECK(j.antisym == doctest::Approx(ref::fig5_P_antisym).epsilon(1e-8));
}

TEST_CASE("marginal is the integral of the joint density") {
  const double w = 12.0 / (2.0 * ref::dk);
  for (double x : {-4e-9, -1e-9, 0.0, 2.5e-9}) {
    const auto m = marginal_density(pair(), x);
    CHECK(m.sym == doctest::Approx(integrate([&](double y) { return joint_density_t0(pair(), x, y).sym; }, -w, w))
                       .epsilon(1e-11));
    CHECK(m.antisym ==
          doctest::Approx(integrate([&](double y) { return joint_density_t0(pair(), x, y).antisym; }, -w, w))
              .epsilon(1e-11));
  }
  const double mass = integrate([&](double x) { return marginal_density(pair(), x).total; }, -w, w);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("one-click mixture weights") {
  const auto ens = default_ensemble();
  const double x = 1e-9;
  CHECK(one_click_mixture(ens, x) ==
        doctest::Approx(0.5 * p1_density(ens.one_el.axis(0), x, 0.0) +
                        0.1 * marginal_density(ens.two_el.axis(0), x).total));
}
