#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <random>

#include "fermipulse/kernels.hpp"
#include "fermipulse/quadrature.hpp"

using namespace fermipulse;
using cd = std::complex<double>;

namespace {

// Direct evaluation of every node, no recurrence.
cd naive(const kernels::ChirpProblem& p) {
  cd sum{0.0, 0.0};
  for (std::size_t panel = 0; panel < p.panels; ++panel) {
    const double mid = p.first_mid + static_cast<double>(panel) * 2.0 * p.half;
    for (std::size_t j = 0; j < p.order; ++j) {
      const double s = mid + p.half * p.nodes[j];
      sum += p.weights[j] * std::exp(-p.c * (s * s) + cd{0.0, p.u * s});
    }
  }
  return sum;
}

kernels::ChirpProblem problem(cd c, double u, double lim, std::size_t panels, std::size_t order) {
  const auto& rule = quadrature::gauss_legendre(order);
  const double half = lim / static_cast<double>(panels);
  return {c, u, -lim + half, half, panels, rule.nodes.data(), rule.weights.data(), order};
}

double rel(cd a, cd b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Sum of node magnitudes: the scale rounding errors are measured against.
double magnitude(const kernels::ChirpProblem& p) {
  double sum = 0.0;
  for (std::size_t panel = 0; panel < p.panels; ++panel) {
    const double mid = p.first_mid + static_cast<double>(panel) * 2.0 * p.half;
    for (std::size_t j = 0; j < p.order; ++j) {
      const double s = mid + p.half * p.nodes[j];
      sum += p.weights[j] * std::exp(-p.c.real() * s * s);
    }
  }
  return sum;
}

}  // namespace

TEST_CASE("recurrence matches direct evaluation") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> beta(0.0, 50.0);
  std::uniform_real_distribution<double> uu(-40.0, 40.0);
  for (int i = 0; i < 40; ++i) {
    const auto p = problem({0.25, beta(rng)}, uu(rng), 11.0, 200 + 37 * i, 16);
    const cd ref = naive(p);
    // absolute scale of the integrand is 1; compare against it
    CHECK(std::abs(kernels::chirp_panels_scalar(p) - ref) < 1e-12 * static_cast<double>(p.panels));
  }
}

TEST_CASE("Gaussian integral through the kernel") {
  // int exp(-s^2/4 + i u s) ds = 2 sqrt(pi) exp(-u^2)
  for (double u : {0.0, 0.5, 2.0}) {
    const auto p = problem({0.25, 0.0}, u, 11.0, 64, 16);
    const cd v = kernels::chirp_panels(p) * p.half;
    CHECK(rel(v, 2.0 * std::sqrt(M_PI) * std::exp(-u * u)) < 1e-12);
  }
}

TEST_CASE("AVX2 kernel is equivalent to the scalar kernel") {
  if (!kernels::avx2_available()) {
    MESSAGE("AVX2 not available on this CPU; equivalence test skipped");
    CHECK_THROWS_AS(kernels::force_isa(kernels::Isa::Avx2), std::runtime_error);
    return;
  }
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> beta(0.0, 5000.0);
  std::uniform_real_distribution<double> uu(-1e4, 1e4);
  std::uniform_int_distribution<std::size_t> np(1, 3000);
  double worst_ab = 0.0, worst_an = 0.0;
  for (int i = 0; i < 200; ++i) {
    for (std::size_t order : {8u, 16u}) {
      const auto p = problem({0.25, beta(rng)}, uu(rng), 11.0, np(rng), order);
      const cd a = kernels::chirp_panels_scalar(p);
      const cd b = kernels::chirp_panels_avx2(p);
      // phase arguments reach |u| lim + |Im c| lim^2, so rounding scales with them
      const double phase = 1.0 + std::abs(p.u) * 11.0 + std::abs(p.c.imag()) * 121.0;
      const double scale = magnitude(p) * phase * 2.220446049250313e-16;
      worst_ab = std::max(worst_ab, std::abs(a - b) / scale);
      worst_an = std::max(worst_an, std::abs(a - naive(p)) / scale);
    }
  }
  MESSAGE("avx2-scalar " << worst_ab << ", avx2-direct " << worst_an);
  CHECK(worst_ab < 2.0);
  CHECK(worst_an < 2.0);
  auto p = problem({0.25, 1.0}, 1.0, 11.0, 10, 6);
  CHECK_THROWS_AS(kernels::chirp_panels_avx2(p), std::invalid_argument);
}

TEST_CASE("dispatch can be forced and reset") {
  kernels::force_isa(kernels::Isa::Scalar);
  CHECK(kernels::active_isa() == kernels::Isa::Scalar);
  const auto p = problem({0.25, 3.0}, 2.0, 11.0, 500, 16);
  const cd s = kernels::chirp_panels(p);
  CHECK(s == kernels::chirp_panels_scalar(p));
  kernels::reset_isa();
  CHECK(kernels::active_isa() == (kernels::avx2_available() ? kernels::Isa::Avx2 : kernels::Isa::Scalar));
}
