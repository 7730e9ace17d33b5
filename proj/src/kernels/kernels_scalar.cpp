#include <vector>

#include "fermipulse/kernels.hpp"

namespace fermipulse::kernels {

using cd = std::complex<double>;

// T_j(p) = f(mid_p + s_j) / (w_j exp(-c s_j^2)) advances by R_p M_j per panel,
// where M_j = exp(-2 c h s_j), R_p = exp(-c (2 mid_p h + h^2) + i u h), h = 2 half.
// Since W_j = w_j exp(-c s_j^2) is panel independent the panels are summed
// first and weighted once at the end. Partial sums are flushed at every
// reseed to keep the accumulated rounding small.
cd chirp_panels_scalar(const ChirpProblem& p) {
  const std::size_t n = p.order;
  const double h = 2.0 * p.half;
  std::vector<double> s(n);
  std::vector<cd> w(n);
  std::vector<cd> m(n);
  std::vector<cd> t(n);
  std::vector<cd> acc(n, cd{0.0, 0.0});
  std::vector<cd> blk(n, cd{0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) {
    s[j] = p.half * p.nodes[j];
    w[j] = p.weights[j] * std::exp(-p.c * (s[j] * s[j]));
    m[j] = std::exp(-2.0 * p.c * (h * s[j]));
  }
  const cd r_step = std::exp(-2.0 * p.c * (h * h));
  cd r{0.0, 0.0};
  for (std::size_t panel = 0; panel < p.panels; ++panel) {
    const double mid = p.first_mid + static_cast<double>(panel) * h;
    if (panel % kReseedPanels == 0) {
      for (std::size_t j = 0; j < n; ++j) {
        acc[j] += blk[j];
        blk[j] = 0.0;
      }
      const cd lin = -2.0 * p.c * mid + cd{0.0, p.u};
      const cd base = -p.c * (mid * mid) + cd{0.0, p.u * mid};
      for (std::size_t j = 0; j < n; ++j) {
        t[j] = std::exp(base + lin * s[j]);
      }
      r = std::exp(-p.c * (2.0 * mid * h + h * h) + cd{0.0, p.u * h});
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        t[j] *= r * m[j];
      }
      r *= r_step;
    }
    for (std::size_t j = 0; j < n; ++j) {
      blk[j] += t[j];
    }
  }
  cd total{0.0, 0.0};
  for (std::size_t j = 0; j < n; ++j) {
    total += w[j] * (acc[j] + blk[j]);
  }
  return total;
}

}  // namespace fermipulse::kernels
