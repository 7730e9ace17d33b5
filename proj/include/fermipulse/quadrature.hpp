#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fermipulse::quadrature {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Rule of the given order, computed once by Newton iteration on P_n and cached.
const GaussLegendreRule& gauss_legendre(std::size_t order);

namespace detail {
inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
template <class T, std::size_t N>
double magnitude(const std::array<T, N>& v) {
  double m = 0.0;
  for (const auto& e : v) {
    m = std::max(m, magnitude(e));
  }
  return m;
}
inline double max_error(double a, double b) { return std::abs(a - b); }
inline double max_error(const std::complex<double>& a, const std::complex<double>& b) {
  return std::abs(a - b);
}
template <class T, std::size_t N>
double max_error(const std::array<T, N>& a, const std::array<T, N>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    m = std::max(m, max_error(a[i], b[i]));
  }
  return m;
}
template <class T>
T scaled(const T& v, double s) {
  return v * s;
}
template <class T, std::size_t N>
std::array<T, N> scaled(const std::array<T, N>& v, double s) {
  std::array<T, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = v[i] * s;
  }
  return out;
}
template <class T>
void accumulate(T& acc, const T& v) {
  acc += v;
}
template <class T, std::size_t N>
void accumulate(std::array<T, N>& acc, const std::array<T, N>& v) {
  for (std::size_t i = 0; i < N; ++i) {
    acc[i] += v[i];
  }
}
}  // namespace detail

/// Composite Gauss-Legendre sum over `panels` equal panels of [a, b].
/// R is double, std::complex<double> or std::array of either.
template <class R, class F>
R integrate_composite(F&& f, double a, double b, std::size_t panels, std::size_t order = 16) {
  const auto& rule = gauss_legendre(order);
  const double h = (b - a) / static_cast<double>(panels);
  R total{};
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * h;
    R panel{};
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      detail::accumulate(panel, detail::scaled(R(f(mid + 0.5 * h * rule.nodes[j])), rule.weights[j]));
    }
    detail::accumulate(total, detail::scaled(panel, 0.5 * h));
  }
  return total;
}

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::size_t order = 16;
  int max_depth = 40;
  std::size_t max_splits = 1u << 16;
};

/// Adaptive bisection: each interval's single-panel estimate is compared with
/// its two halves; intervals that disagree beyond the tolerance are split.
/// The tolerance is rel_tol times the two-panel estimate of the whole
/// integral (or abs_tol if larger), shared out by halving.
/// Throws std::runtime_error when max_depth or max_splits is exhausted.
template <class R, class F>
R integrate_adaptive(F&& f, double a, double b, const AdaptiveOptions& opt = {}) {
  struct Recursion {
    F& f;
    const AdaptiveOptions& opt;
    std::size_t splits = 0;
    R run(double lo, double hi, const R& whole, const R& left, const R& right, double tol, int depth) {
      R halves = left;
      detail::accumulate(halves, right);
      if (detail::max_error(halves, whole) <= tol) {
        return halves;
      }
      if (depth >= opt.max_depth) {
        throw std::runtime_error("integrate_adaptive: maximum subdivision depth reached");
      }
      if (++splits > opt.max_splits) {
        throw std::runtime_error("integrate_adaptive: subdivision budget exhausted");
      }
      const double mid = 0.5 * (lo + hi);
      R out = split(lo, mid, left, 0.5 * tol, depth + 1);
      detail::accumulate(out, split(mid, hi, right, 0.5 * tol, depth + 1));
      return out;
    }
    R split(double lo, double hi, const R& whole, double tol, int depth) {
      const double mid = 0.5 * (lo + hi);
      const R left = integrate_composite<R>(f, lo, mid, 1, opt.order);
      const R right = integrate_composite<R>(f, mid, hi, 1, opt.order);
      return run(lo, hi, whole, left, right, tol, depth);
    }
  };
  Recursion rec{f, opt, 0};
  const double mid = 0.5 * (a + b);
  const R whole = integrate_composite<R>(f, a, b, 1, opt.order);
  const R left = integrate_composite<R>(f, a, mid, 1, opt.order);
  const R right = integrate_composite<R>(f, mid, b, 1, opt.order);
  R halves = left;
  detail::accumulate(halves, right);
  const double tol = std::max(opt.rel_tol * detail::magnitude(halves), opt.abs_tol);
  return rec.run(a, b, whole, left, right, tol, 0);
}

}  // namespace fermipulse::quadrature
