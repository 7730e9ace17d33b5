#pragma once

#include <complex>
#include <cstddef>

namespace fermipulse::kernels {

enum class Isa { Scalar, Avx2 };

/// Panel sum of a chirped Gaussian, the inner loop of the k-space oracle:
///
///   sum_{p < panels} sum_{j < order} w_j f(mid_p + half * x_j),
///   f(s) = exp(-c s^2 + i u s),  mid_p = first_mid + p * 2 * half,
///
/// with (x_j, w_j) a rule on [-1, 1]. The caller multiplies by `half`.
/// Exponentials are evaluated exactly every `reseed` panels and advanced by
/// complex multiplication in between.
struct ChirpProblem {
  std::complex<double> c;
  double u;
  double first_mid;
  double half;
  std::size_t panels;
  const double* nodes;
  const double* weights;
  std::size_t order;
};

inline constexpr std::size_t kReseedPanels = 64;

std::complex<double> chirp_panels_scalar(const ChirpProblem& p);
/// Requires order % 4 == 0 and a CPU with AVX2 and FMA.
std::complex<double> chirp_panels_avx2(const ChirpProblem& p);

/// Dispatches to the best kernel available on this CPU (or the forced one).
std::complex<double> chirp_panels(const ChirpProblem& p);

bool avx2_available();
Isa active_isa();
/// Test hook. Forcing Avx2 on a CPU without it throws std::runtime_error.
void force_isa(Isa isa);
void reset_isa();

}  // namespace fermipulse::kernels
