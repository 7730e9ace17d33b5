#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "fermipulse/quadrature.hpp"

using namespace fermipulse::quadrature;

TEST_CASE("Gauss-Legendre rules are exact for polynomials of degree 2n-1") {
  for (std::size_t n : {1u, 2u, 5u, 8u, 16u, 32u}) {
    const auto& rule = gauss_legendre(n);
    REQUIRE(rule.nodes.size() == n);
    double wsum = 0.0;
    for (double w : rule.weights) {
      wsum += w;
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    const auto deg = static_cast<int>(2 * n - 1);
    for (int p = 0; p <= deg; ++p) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        s += rule.weights[j] * std::pow(rule.nodes[j], p);
      }
      const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
      CHECK(std::abs(s - exact) < 1e-13);
    }
  }
  CHECK(&gauss_legendre(16) == &gauss_legendre(16));
}

TEST_CASE("composite rule on smooth integrands") {
  const double v = integrate_composite<double>([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 8);
  CHECK(v == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
  const auto c = integrate_composite<std::complex<double>>(
      [](double x) { return std::exp(std::complex<double>(0.0, 3.0 * x)); }, 0.0, 1.0, 4);
  const auto want = (std::exp(std::complex<double>(0.0, 3.0)) - 1.0) / std::complex<double>(0.0, 3.0);
  CHECK(std::abs(c - want) < 1e-14);
}

TEST_CASE("adaptive rule reaches its tolerance on a peaked integrand") {
  AdaptiveOptions opt;
  opt.rel_tol = 1e-12;
  const double v = integrate_adaptive<double>([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, opt);
  const double exact = 2.0 * std::atan(1.0 / 1e-2) / 1e-2;
  CHECK(std::abs(v - exact) / exact < 1e-11);
  const auto arr = integrate_adaptive<std::array<double, 2>>(
      [](double x) { return std::array<double, 2>{std::sin(x), std::cos(x)}; }, 0.0, M_PI, opt);
  CHECK(std::abs(arr[0] - 2.0) < 1e-12);
  CHECK(std::abs(arr[1]) < 1e-12);
}

TEST_CASE("adaptive rule gives up on noise instead of recursing forever") {
  AdaptiveOptions opt;
  opt.rel_tol = 1e-15;
  opt.max_splits = 200;
  unsigned state = 1;
  auto noisy = [&](double) {
    state = state * 1103515245u + 12345u;
    return 1.0 + 1e-6 * static_cast<double>(state % 1000) / 1000.0;
  };
  CHECK_THROWS_AS(integrate_adaptive<double>(noisy, 0.0, 1.0, opt), std::runtime_error);
}
