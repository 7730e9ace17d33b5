#pragma once

#include <complex>

namespace fermipulse {

using Complex = std::complex<double>;

// Error functions of real and complex argument.
//
// The complex routines are accurate to about 1e-13 relative inside the box
// |Re z| <= 10, |Im z| <= 10 (away from zeros of the function). They combine
// the Maclaurin series of erf near the origin with the Laplace continued
// fraction for the scaled complementary function elsewhere.

/// erf(x); throws std::domain_error for non-finite x.
double erf_real(double x);

/// Faddeeva function w(z) = exp(-z^2) erfc(-i z).
/// Throws std::domain_error for non-finite z and std::range_error if the
/// result would overflow (far in the lower half plane).
Complex faddeeva(Complex z);

/// erf(z) for complex z. Throws std::domain_error for non-finite z and
/// std::range_error for |Im z| > 10, where exp(-z^2) leaves the accuracy
/// domain and quickly overflows.
Complex erf_complex(Complex z);

/// erfc(z) = 1 - erf(z), same domain rules as erf_complex.
Complex erfc_complex(Complex z);

/// erf(b) - erf(a), evaluated through erfc when both arguments sit in the
/// same saturated tail so that small differences keep their digits.
double erf_difference(double a, double b);
Complex erf_difference(Complex a, Complex b);

namespace detail {
/// Maclaurin series of erf(z); accurate where |z| is moderate or z is close
/// to the imaginary axis.
Complex erf_series(Complex z);
/// sqrt(pi) * exp(z^2) * erfc(z) by continued fraction; requires Re z > 0.
Complex erfc_scaled_cf(Complex z);
/// True where erfc_scaled_cf converges quickly and the series would cancel.
bool in_fraction_region(Complex z);
}  // namespace detail

}  // namespace fermipulse
