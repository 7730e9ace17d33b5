#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fermipulse/quadrature.hpp"
#include "fermipulse/specfun.hpp"
#include "reference_values.hpp"

using namespace fermipulse;

namespace {

struct WRow {
  Complex z;
  Complex w;
};

std::vector<WRow> load_table() {
  std::ifstream in(FERMIPULSE_TEST_DATA "/faddeeva_mpmath.csv");
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  std::vector<WRow> rows;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    double v[4];
    char comma;
    ss >> v[0] >> comma >> v[1] >> comma >> v[2] >> comma >> v[3];
    rows.push_back({{v[0], v[1]}, {v[2], v[3]}});
  }
  return rows;
}

double rel(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("erf_real examples") {
  CHECK(erf_real(0.0) == 0.0);
  CHECK(std::abs(erf_real(1.0 / std::sqrt(2.0)) - ref::erf_inv_sqrt2) < 1e-14);
  CHECK(std::abs(erf_real(10.0) - 1.0) < 1e-15);
  CHECK(erf_real(-0.3) == -erf_real(0.3));
  CHECK_THROWS_AS(erf_real(NAN), std::domain_error);
  CHECK_THROWS_AS(erf_real(INFINITY), std::domain_error);
}

TEST_CASE("faddeeva matches the mpmath table") {
  const auto rows = load_table();
  REQUIRE(rows.size() >= 400);
  double worst = 0.0;
  for (const auto& r : rows) {
    const double e = rel(faddeeva(r.z), r.w);
    worst = std::max(worst, e);
    CHECK_MESSAGE(e <= 1e-10, "z = " << r.z.real() << " + " << r.z.imag() << "i");
  }
  MESSAGE("worst relative error " << worst);
}

TEST_CASE("faddeeva special values") {
  CHECK(std::abs(faddeeva({0.0, 0.0}) - Complex{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(faddeeva({0.0, 1.0}).real() - 0.4275835761558070) < 1e-13);
  CHECK_THROWS_AS(faddeeva({NAN, 0.0}), std::domain_error);
  CHECK_THROWS_AS(faddeeva({0.0, -40.0}), std::range_error);
}

TEST_CASE("erf_complex agrees with a segment integral") {
  // erf(z) = 2/sqrt(pi) int_0^1 z exp(-s^2 z^2) ds
  for (Complex z : {Complex{0.3, 0.2}, Complex{2.0, -0.7}, Complex{-4.0, 1.0}, Complex{0.01, 3.0}}) {
    const Complex ref = quadrature::integrate_composite<Complex>(
                            [&](double s) { return z * std::exp(-s * s * z * z); }, 0.0, 1.0, 64, 16) *
                        (2.0 / std::sqrt(M_PI));
    CHECK(rel(erf_complex(z), ref) < 1e-12);
  }
}

TEST_CASE("property: erf identities on 1000 random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(-6.0, 6.0);
  std::uniform_real_distribution<double> im(-3.0, 3.0);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const Complex z{re(rng), im(rng)};
    const Complex e = erf_complex(z);
    const double scale = std::max(1.0, std::abs(e));
    // erf + erfc = 1
    bad += std::abs(e + erfc_complex(z) - 1.0) > 1e-12 * scale;
    // odd
    bad += std::abs(erf_complex(-z) + e) > 1e-12 * scale;
    // reflection erf(conj z) = conj erf(z)
    bad += std::abs(erf_complex(std::conj(z)) - std::conj(e)) > 1e-12 * scale;
    // w(z) = exp(-z^2) erfc(-iz), checked against erf through w(iz)
    const Complex viaw = 1.0 - std::exp(-z * z) * faddeeva(Complex{0.0, 1.0} * z);
    bad += std::abs(viaw - e) > 1e-12 * std::max(scale, std::abs(std::exp(-z * z)));
  }
  CHECK(bad == 0);
}

TEST_CASE("erf_difference keeps tail digits") {
  // erf(6.1) - erf(6.0) = erfc(6.0) - erfc(6.1)
  const double d = erf_difference(6.0, 6.1);
  const double want = std::erfc(6.0) - std::erfc(6.1);
  CHECK(std::abs(d - want) / want < 1e-12);
  CHECK(erf_difference(-6.1, -6.0) == doctest::Approx(want).epsilon(1e-12));
  CHECK(erf_difference(0.0, 1.0) == doctest::Approx(std::erf(1.0)).epsilon(1e-15));
  const Complex a{5.0, 0.3}, b{5.2, 0.3};
  const Complex cd = erf_difference(a, b);
  const Complex cw = erfc_complex(a) - erfc_complex(b);
  CHECK(rel(cd, cw) < 1e-12);
}

TEST_CASE("complex erf outside the accuracy box is refused") {
  CHECK_THROWS_AS(erf_complex({0.0, 11.0}), std::range_error);
  CHECK_THROWS_AS(erf_complex({NAN, 1.0}), std::domain_error);
}
