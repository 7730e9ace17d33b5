#include "fermipulse/degeneracy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "fermipulse/constants.hpp"

namespace fermipulse {

namespace {

using constants::electron_mass;
using constants::hbar;

std::atomic<std::uint64_t> g_clamped{0};

constexpr double kNegativeFloor = -1e-10;

double clamp_nonnegative(double v, const char* where) {
  if (v >= 0.0) {
    return v;
  }
  if (v >= kNegativeFloor) {
    g_clamped.fetch_add(1, std::memory_order_relaxed);
    return 0.0;
  }
  throw std::runtime_error(std::string(where) + ": negative degeneracy " + std::to_string(v));
}

// Per-axis half window differences of xi2 and theta2.
struct AxisInterference {
  Complex d_xi;
  Complex d_theta;
};

AxisInterference axis_interference(double x_lo, double x_hi, double k1, double k2, double dk,
                                   double t) {
  const double a = alpha(t, dk);
  const double s = std::sqrt(2.0 * a) * dk;
  const double c = hbar * (k1 + k2) * t / (2.0 * electron_mass);
  const double im = std::sqrt(a) * (k1 - k2) / (2.0 * std::sqrt(2.0) * dk);
  const Complex lo_xi{s * (x_lo - c), -im};
  const Complex hi_xi{s * (x_hi - c), -im};
  const Complex d_xi = 0.5 * erf_difference(lo_xi, hi_xi);
  const Complex d_theta = 0.5 * erf_difference(std::conj(lo_xi), std::conj(hi_xi));
  return {d_xi, d_theta};
}

double real_part_checked(Complex v, const char* where) {
  if (std::abs(v.imag()) > 1e-12 * std::abs(v) && std::abs(v.imag()) > 1e-300) {
    throw std::logic_error(std::string(where) + ": imaginary residual too large");
  }
  return v.real();
}

}  // namespace

double alpha(double t, double dk) {
  const double r = 2.0 * hbar * dk * dk * t / electron_mass;
  return 1.0 / (1.0 + r * r);
}

double arrival_time(double x, double k0) { return x * electron_mass / (hbar * k0); }

double delta1_axis(double x_lo, double x_hi, double k0, double dk, double t) {
  if (!(x_lo < x_hi)) {
    throw std::invalid_argument("delta1_axis: requires x_lo < x_hi");
  }
  const double s = std::sqrt(2.0 * alpha(t, dk)) * dk;
  const double c = hbar * k0 * t / electron_mass;
  return 0.5 * erf_difference(s * (x_lo - c), s * (x_hi - c));
}

double delta1_3d(const DetectorWindow& det, const GaussianPacket3D& p, double t) {
  double prod = 1.0;
  for (int i = 0; i < 3; ++i) {
    prod *= delta1_axis(det.lo(i), det.hi(i), p.axis(i).k0, p.dk(), t);
  }
  return prod;
}

double xi1(double x, double t, double k, double dk) {
  const double s = std::sqrt(2.0 * alpha(t, dk)) * dk;
  return erf_real(s * (x - hbar * k * t / electron_mass));
}

Complex xi2(double x, double t, double k1, double k2, double dk) {
  const double a = alpha(t, dk);
  const double re = std::sqrt(2.0 * a) * dk * (x - hbar * (k1 + k2) * t / (2.0 * electron_mass));
  const double im = std::sqrt(a) * (k1 - k2) / (2.0 * std::sqrt(2.0) * dk);
  return erf_complex({re, -im});
}

Complex theta2(double x, double t, double k1, double k2, double dk) {
  const double a = alpha(t, dk);
  const double re = std::sqrt(2.0 * a) * dk * (x - hbar * (k1 + k2) * t / (2.0 * electron_mass));
  const double im = std::sqrt(a) * (k1 - k2) / (2.0 * std::sqrt(2.0) * dk);
  return erf_complex({re, im});
}

double interference_axis(double x_lo, double x_hi, const PairAxis& pair, double t) {
  const auto ai = axis_interference(x_lo, x_hi, pair.ka, pair.kb, pair.dk, t);
  return real_part_checked(ai.d_xi + ai.d_theta, "interference_axis");
}

double delta2_axis(Symmetry sym, double x_lo, double x_hi, const PairAxis& pair, double t,
                   const TwoElectronOptions& opt) {
  const double sign = sym == Symmetry::Symmetric ? 1.0 : -1.0;
  const double ov2 = pair.overlap * pair.overlap;
  const double denom = sym == Symmetry::Symmetric ? 1.0 + ov2 : pair.one_minus_overlap2;
  const double one = delta1_axis(x_lo, x_hi, pair.ka, pair.dk, t) +
                     delta1_axis(x_lo, x_hi, pair.kb, pair.dk, t);
  const double inter = ov2 == 0.0 ? 0.0 : interference_axis(x_lo, x_hi, pair, t);
  const double v = (one + sign * opt.interference_scale * ov2 * inter) / denom;
  return clamp_nonnegative(v, "delta2_axis");
}

double delta2_3d(Symmetry sym, const DetectorWindow& det, const TwoElectronPacket& pair, double t,
                 const TwoElectronOptions& opt) {
  const double sign = sym == Symmetry::Symmetric ? 1.0 : -1.0;
  const double ov2 = pair.overlap() * pair.overlap();
  const double denom = sym == Symmetry::Symmetric ? 1.0 + ov2 : pair.one_minus_overlap2();
  const double one = delta1_3d(det, pair.a(), t) + delta1_3d(det, pair.b(), t);
  double inter = 0.0;
  if (ov2 != 0.0) {
    Complex prod_xi{1.0, 0.0};
    Complex prod_theta{1.0, 0.0};
    for (int i = 0; i < 3; ++i) {
      const auto ai = axis_interference(det.lo(i), det.hi(i), pair.a().axis(i).k0,
                                        pair.b().axis(i).k0, pair.dk(), t);
      prod_xi *= ai.d_xi;
      prod_theta *= ai.d_theta;
    }
    inter = real_part_checked(prod_xi + prod_theta, "delta2_3d");
  }
  const double v = (one + sign * opt.interference_scale * ov2 * inter) / denom;
  return clamp_nonnegative(v, "delta2_3d");
}

double delta2_total_3d(const DetectorWindow& det, const TwoElectronPacket& pair, double t,
                       const TwoElectronOptions& opt) {
  return 0.25 * delta2_3d(Symmetry::Symmetric, det, pair, t, opt) +
         0.75 * delta2_3d(Symmetry::Antisymmetric, det, pair, t, opt);
}

DegeneracyBreakdown delta_total(const SourceEnsemble& ens, const DetectorWindow& det, double t,
                                const TwoElectronOptions& opt) {
  DegeneracyBreakdown b{};
  b.t = t;
  b.d1_3d = delta1_3d(det, ens.one_el, t);
  b.d2_sym_3d = delta2_3d(Symmetry::Symmetric, det, ens.two_el, t, opt);
  b.d2_antisym_3d = delta2_3d(Symmetry::Antisymmetric, det, ens.two_el, t, opt);
  b.d2_total_3d = 0.25 * b.d2_sym_3d + 0.75 * b.d2_antisym_3d;
  b.d_total = ens.p1 * b.d1_3d + ens.p2 * b.d2_total_3d;
  return b;
}

std::uint64_t clamped_negative_count() { return g_clamped.load(std::memory_order_relaxed); }

double transit_sigma(double x, double k0, double dk) {
  const double t_arr = arrival_time(x, k0);
  return (1.0 / dk) * electron_mass / (hbar * k0) / std::sqrt(alpha(t_arr, dk));
}

std::vector<double> transit_time_grid(double x, double k0, double dk, std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("transit_time_grid: need at least 2 points");
  }
  const double t_arr = arrival_time(x, k0);
  const double half = 5.0 * transit_sigma(x, k0, dk);
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = t_arr - half + 2.0 * half * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return t;
}

DipAnalysis analyze_dip(const std::vector<double>& t, const std::vector<double>& v) {
  DipAnalysis out;
  const std::size_t n = std::min(t.size(), v.size());
  if (n < 3) {
    return out;
  }
  std::vector<std::size_t> maxima;
  std::vector<std::size_t> minima;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (v[i] > v[i - 1] && v[i] >= v[i + 1]) {
      maxima.push_back(i);
    }
    if (v[i] < v[i - 1] && v[i] <= v[i + 1]) {
      minima.push_back(i);
    }
  }
  bool have = false;
  std::size_t best = 0;
  std::size_t left = 0;
  std::size_t right = 0;
  for (std::size_t m : minima) {
    std::size_t l = n;
    std::size_t r = n;
    for (std::size_t mx : maxima) {
      if (mx < m) {
        l = mx;
      } else if (mx > m && r == n) {
        r = mx;
      }
    }
    if (l == n || r == n) {
      continue;
    }
    if (!have || v[m] < v[best]) {
      have = true;
      best = m;
      left = l;
      right = r;
    }
  }
  if (!have) {
    return out;
  }
  out.found = true;
  out.t_min = t[best];
  out.value_min = v[best];
  out.t_left_max = t[left];
  out.t_right_max = t[right];
  out.value_left_max = v[left];
  out.value_right_max = v[right];
  out.maxima_separation = t[right] - t[left];
  const double level = v[best] + 0.5 * (std::min(v[left], v[right]) - v[best]);
  auto crossing = [&](std::size_t i, std::size_t j) {
    return t[i] + (level - v[i]) * (t[j] - t[i]) / (v[j] - v[i]);
  };
  std::size_t i = best;
  while (i > left && v[i - 1] < level) {
    --i;
  }
  const double t_lo = i > left ? crossing(i - 1, i) : t[left];
  std::size_t j = best;
  while (j < right && v[j + 1] < level) {
    ++j;
  }
  const double t_hi = j < right ? crossing(j, j + 1) : t[right];
  out.fwhm = t_hi - t_lo;
  return out;
}

PeakResult peak_delta1_3d(const DetectorWindow& det, const GaussianPacket3D& p) {
  const double k0 = p.axis(0).k0;
  if (k0 <= 0.0) {
    throw std::invalid_argument("peak_delta1_3d: packet must move towards +x");
  }
  const auto grid = transit_time_grid(det.center[0], k0, p.dk(), 401);
  std::size_t best = 0;
  double best_v = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = delta1_3d(det, p, grid[i]);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];
  const double scale = hi - lo;
  auto neg = [&](double u) { return -delta1_3d(det, p, lo + u * scale); };
  const auto r = boost::math::tools::brent_find_minima(neg, 0.0, 1.0, 40);
  const double t_peak = lo + r.first * scale;
  const double v = -r.second;
  if (v < best_v) {
    return {grid[best], best_v};
  }
  return {t_peak, v};
}

}  // namespace fermipulse
