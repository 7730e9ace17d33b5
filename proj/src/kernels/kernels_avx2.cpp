#include <stdexcept>
#include <vector>

#include "fermipulse/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace fermipulse::kernels {

using cd = std::complex<double>;

namespace {

// Split-complex lanes: four complex values per pair of registers.
struct V4 {
  __m256d re;
  __m256d im;
};

inline V4 cmul(V4 a, V4 b) {
  return {_mm256_fmsub_pd(a.re, b.re, _mm256_mul_pd(a.im, b.im)),
          _mm256_fmadd_pd(a.re, b.im, _mm256_mul_pd(a.im, b.re))};
}

inline V4 cmul_scalar(V4 a, cd b) {
  const __m256d br = _mm256_set1_pd(b.real());
  const __m256d bi = _mm256_set1_pd(b.imag());
  return {_mm256_fmsub_pd(a.re, br, _mm256_mul_pd(a.im, bi)),
          _mm256_fmadd_pd(a.re, bi, _mm256_mul_pd(a.im, br))};
}

inline V4 load(const double* re, const double* im) { return {_mm256_loadu_pd(re), _mm256_loadu_pd(im)}; }

inline void store(V4 v, double* re, double* im) {
  _mm256_storeu_pd(re, v.re);
  _mm256_storeu_pd(im, v.im);
}

}  // namespace

// Same recurrence as chirp_panels_scalar, four nodes per register.
cd chirp_panels_avx2(const ChirpProblem& p) {
  const std::size_t n = p.order;
  if (n % 4 != 0) {
    throw std::invalid_argument("chirp_panels_avx2: order must be a multiple of 4");
  }
  const double h = 2.0 * p.half;
  std::vector<double> s(n);
  std::vector<cd> w(n);
  std::vector<double> m_re(n), m_im(n), t_re(n), t_im(n), a_re(n, 0.0), a_im(n, 0.0),
      b_re(n, 0.0), b_im(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    s[j] = p.half * p.nodes[j];
    w[j] = p.weights[j] * std::exp(-p.c * (s[j] * s[j]));
    const cd m = std::exp(-2.0 * p.c * (h * s[j]));
    m_re[j] = m.real();
    m_im[j] = m.imag();
  }
  const cd r_step = std::exp(-2.0 * p.c * (h * h));
  cd r{0.0, 0.0};
  const std::size_t blocks = n / 4;
  for (std::size_t panel = 0; panel < p.panels; ++panel) {
    const double mid = p.first_mid + static_cast<double>(panel) * h;
    if (panel % kReseedPanels == 0) {
      const cd lin = -2.0 * p.c * mid + cd{0.0, p.u};
      const cd base = -p.c * (mid * mid) + cd{0.0, p.u * mid};
      for (std::size_t j = 0; j < n; ++j) {
        const cd t = std::exp(base + lin * s[j]);
        t_re[j] = t.real();
        t_im[j] = t.imag();
      }
      r = std::exp(-p.c * (2.0 * mid * h + h * h) + cd{0.0, p.u * h});
      for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t o = 4 * b;
        V4 acc = load(&a_re[o], &a_im[o]);
        const V4 blk = load(&b_re[o], &b_im[o]);
        acc.re = _mm256_add_pd(acc.re, blk.re);
        acc.im = _mm256_add_pd(acc.im, blk.im);
        store(acc, &a_re[o], &a_im[o]);
        store(load(&t_re[o], &t_im[o]), &b_re[o], &b_im[o]);
      }
      continue;
    }
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t o = 4 * b;
      const V4 step = cmul_scalar(load(&m_re[o], &m_im[o]), r);
      const V4 t = cmul(load(&t_re[o], &t_im[o]), step);
      store(t, &t_re[o], &t_im[o]);
      V4 blk = load(&b_re[o], &b_im[o]);
      blk.re = _mm256_add_pd(blk.re, t.re);
      blk.im = _mm256_add_pd(blk.im, t.im);
      store(blk, &b_re[o], &b_im[o]);
    }
    r *= r_step;
  }
  cd total{0.0, 0.0};
  for (std::size_t j = 0; j < n; ++j) {
    total += w[j] * (cd{a_re[j], a_im[j]} + cd{b_re[j], b_im[j]});
  }
  return total;
}

bool avx2_kernel_built() { return true; }

}  // namespace fermipulse::kernels

#else

namespace fermipulse::kernels {

std::complex<double> chirp_panels_avx2(const ChirpProblem&) {
  throw std::runtime_error("chirp_panels_avx2: built without AVX2 support");
}

bool avx2_kernel_built() { return false; }

}  // namespace fermipulse::kernels

#endif
