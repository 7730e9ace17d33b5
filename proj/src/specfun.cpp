#include "fermipulse/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fermipulse {

namespace {

constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kTwoOverSqrtPi = 1.12837916709551257390;
constexpr double kDomainEdge = 10.0;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(Complex z, const char* where) {
  if (!finite(z)) {
    throw std::domain_error(std::string(where) + ": non-finite argument");
  }
}

}  // namespace

namespace detail {

Complex erf_series(Complex z) {
  if (z == Complex{0.0, 0.0}) {
    return {0.0, 0.0};
  }
  const Complex z2 = z * z;
  const double min_terms = std::abs(z2);
  Complex term = z;
  Complex sum = z;
  for (int n = 1; n < 4000; ++n) {
    term *= -z2 / static_cast<double>(n);
    const Complex c = term / static_cast<double>(2 * n + 1);
    sum += c;
    if (n > min_terms && std::abs(c) <= 1e-17 * std::abs(sum)) {
      return kTwoOverSqrtPi * sum;
    }
  }
  throw std::runtime_error("erf_series: no convergence");
}

// Laplace continued fraction
//   sqrt(pi) exp(z^2) erfc(z) = 1 / (z + (1/2) / (z + 1 / (z + (3/2) / (z + ...))))
// evaluated forward with the modified Lentz recurrence.
Complex erfc_scaled_cf(Complex z) {
  constexpr double tiny = 1e-300;
  Complex f = z;
  if (std::abs(f) < tiny) {
    f = tiny;
  }
  Complex c = f;
  Complex d = 0.0;
  for (int n = 1; n < 20000; ++n) {
    const double a = 0.5 * n;
    d = z + a * d;
    if (std::abs(d) < tiny) {
      d = tiny;
    }
    d = 1.0 / d;
    c = z + a / c;
    if (std::abs(c) < tiny) {
      c = tiny;
    }
    const Complex delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      return 1.0 / f;
    }
  }
  throw std::runtime_error("erfc_scaled_cf: no convergence");
}

bool in_fraction_region(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  if (x < 0.0) {
    return false;
  }
  if (x > 1.5 && std::abs(z) > 2.0) {
    return true;
  }
  return (x / 4.4) * (x / 4.4) + (y / 6.3) * (y / 6.3) >= 1.0;
}

}  // namespace detail

double erf_real(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("erf_real: non-finite argument");
  }
  return std::erf(x);
}

Complex faddeeva(Complex z) {
  require_finite(z, "faddeeva");
  if (z.imag() < 0.0) {
    // w(z) = 2 exp(-z^2) - w(-z)
    const double log_mag = z.imag() * z.imag() - z.real() * z.real();
    if (log_mag > 700.0) {
      throw std::range_error("faddeeva: result overflows");
    }
    return 2.0 * std::exp(-z * z) - faddeeva(-z);
  }
  const Complex u{z.imag(), -z.real()};  // -i z, Re u >= 0
  if (detail::in_fraction_region(u)) {
    return kInvSqrtPi * detail::erfc_scaled_cf(u);
  }
  return std::exp(-z * z) * (1.0 - detail::erf_series(u));
}

Complex erf_complex(Complex z) {
  require_finite(z, "erf_complex");
  if (std::abs(z.imag()) > kDomainEdge) {
    throw std::range_error("erf_complex: |Im z| outside the accuracy domain");
  }
  if (z.real() < 0.0) {
    return -erf_complex(-z);
  }
  if (detail::in_fraction_region(z)) {
    return 1.0 - kInvSqrtPi * std::exp(-z * z) * detail::erfc_scaled_cf(z);
  }
  return detail::erf_series(z);
}

Complex erfc_complex(Complex z) {
  require_finite(z, "erfc_complex");
  if (std::abs(z.imag()) > kDomainEdge) {
    throw std::range_error("erfc_complex: |Im z| outside the accuracy domain");
  }
  if (z.real() < 0.0) {
    return 2.0 - erfc_complex(-z);
  }
  if (detail::in_fraction_region(z)) {
    return kInvSqrtPi * std::exp(-z * z) * detail::erfc_scaled_cf(z);
  }
  return 1.0 - detail::erf_series(z);
}

double erf_difference(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("erf_difference: non-finite argument");
  }
  if (a >= 0.0 && b >= 0.0) {
    return std::erfc(a) - std::erfc(b);
  }
  if (a <= 0.0 && b <= 0.0) {
    return std::erfc(-b) - std::erfc(-a);
  }
  return std::erf(b) - std::erf(a);
}

Complex erf_difference(Complex a, Complex b) {
  if (detail::in_fraction_region(a) && detail::in_fraction_region(b)) {
    return erfc_complex(a) - erfc_complex(b);
  }
  if (detail::in_fraction_region(-a) && detail::in_fraction_region(-b)) {
    return erfc_complex(-b) - erfc_complex(-a);
  }
  return erf_complex(b) - erf_complex(a);
}

}  // namespace fermipulse
