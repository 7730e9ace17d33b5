#include "fermipulse/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "fermipulse/detection.hpp"
#include "fermipulse/quadrature.hpp"

namespace fermipulse {

namespace {

// Uniform double in [0, 1) from the top 53 bits; std::uniform_real_distribution
// is not specified bit-for-bit across standard libraries.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Tabulated inverse CDF of a density on [lo, hi].
class InverseCdf {
 public:
  template <class F>
  InverseCdf(F&& density, double lo, double hi, std::size_t n) : x_(n), cdf_(n) {
    const double h = (hi - lo) / static_cast<double>(n - 1);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
      x_[i] = lo + h * static_cast<double>(i);
      f[i] = density(x_[i]);
    }
    cdf_[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      cdf_[i] = cdf_[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    }
    const double total = cdf_.back();
    for (double& c : cdf_) {
      c /= total;
    }
  }

  double operator()(double u) const {
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.begin()) {
      return x_.front();
    }
    if (it == cdf_.end()) {
      return x_.back();
    }
    const std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
    const double span = cdf_[i] - cdf_[i - 1];
    const double frac = span > 0.0 ? (u - cdf_[i - 1]) / span : 0.0;
    return x_[i - 1] + frac * (x_[i] - x_[i - 1]);
  }

 private:
  std::vector<double> x_;
  std::vector<double> cdf_;
};

constexpr std::size_t kTableSize = 16385;
constexpr double kTableHalfWidthInInvDk = 5.0;  // +- 10 sigma of P1(x, 0)

// Model bin masses of P1(x, 0) and the two-electron marginal.
struct BinMasses {
  std::vector<double> one;
  std::vector<double> two;
};

BinMasses model_bin_masses(const Histogram& hist, const SourceEnsemble& shape) {
  const PacketAxis p = shape.one_el.axis(0);
  const PairAxis pair = shape.two_el.axis(0);
  BinMasses m;
  m.one.resize(hist.fraction.size());
  m.two.resize(hist.fraction.size());
  for (std::size_t b = 0; b < hist.fraction.size(); ++b) {
    const double a = hist.lo + hist.width * static_cast<double>(b);
    m.one[b] = quadrature::integrate_composite<double>([&](double x) { return p1_density(p, x, 0.0); }, a,
                                                       a + hist.width, 4);
    m.two[b] = quadrature::integrate_composite<double>(
        [&](double x) { return marginal_density(pair, x).total; }, a, a + hist.width, 4);
  }
  return m;
}

double objective(const Histogram& hist, const BinMasses& m, double p0, double p1) {
  const double click = 1.0 - p0;
  const double p2 = click - p1;
  double sse = 0.0;
  for (std::size_t b = 0; b < hist.fraction.size(); ++b) {
    const double model = (p1 * m.one[b] + p2 * m.two[b]) / click;
    const double d = hist.fraction[b] - model;
    sse += d * d;
  }
  return sse;
}

}  // namespace

ClickSample sample_clicks(const SourceEnsemble& ens, std::size_t n_pulses, std::uint64_t seed) {
  if (n_pulses == 0) {
    throw std::invalid_argument("sample_clicks: n_pulses must be > 0");
  }
  const PacketAxis p = ens.one_el.axis(0);
  const PairAxis pair = ens.two_el.axis(0);
  const double half = kTableHalfWidthInInvDk / p.dk;
  const double half2 = kTableHalfWidthInInvDk / pair.dk;
  const InverseCdf one([&](double x) { return p1_density(p, x, 0.0); }, -half, half, kTableSize);
  const InverseCdf two([&](double x) { return marginal_density(pair, x).total; }, -half2, half2,
                       kTableSize);
  std::mt19937_64 rng(seed);
  ClickSample s;
  s.seed = seed;
  s.clicked.reserve(n_pulses);
  for (std::size_t i = 0; i < n_pulses; ++i) {
    const double u = uniform01(rng);
    if (u < ens.p0) {
      s.clicked.push_back(0);
      ++s.n_null;
      continue;
    }
    const double v = uniform01(rng);
    s.clicked.push_back(1);
    s.positions.push_back(u < ens.p0 + ens.p1 ? one(v) : two(v));
  }
  return s;
}

void write_clicks_csv(const ClickSample& sample, std::ostream& out) {
  out << "pulse_index,outcome,x_m\n";
  const auto old_flags = out.flags();
  const auto old_prec = out.precision();
  out.setf(std::ios::scientific, std::ios::floatfield);
  out.precision(16);
  std::size_t k = 0;
  for (std::size_t i = 0; i < sample.clicked.size(); ++i) {
    if (sample.clicked[i] != 0) {
      out << i << ",click," << sample.positions.at(k++) << '\n';
    } else {
      out << i << ",null,\n";
    }
  }
  out.flags(old_flags);
  out.precision(old_prec);
}

Histogram click_histogram(const ClickSample& sample, double dk, const FitOptions& opt) {
  if (sample.positions.empty()) {
    throw std::invalid_argument("click_histogram: sample has no clicks");
  }
  if (opt.bins < 2) {
    throw std::invalid_argument("click_histogram: need at least 2 bins");
  }
  const double half = opt.half_range_in_inv_dk / dk;
  Histogram h{-half, 2.0 * half / static_cast<double>(opt.bins), std::vector<double>(opt.bins, 0.0)};
  for (double x : sample.positions) {
    const double pos = (x - h.lo) / h.width;
    if (pos >= 0.0 && pos < static_cast<double>(opt.bins)) {
      h.fraction[static_cast<std::size_t>(pos)] += 1.0;
    }
  }
  std::size_t occupied = 0;
  for (double& f : h.fraction) {
    occupied += f > 0.0 ? 1 : 0;
    f /= static_cast<double>(sample.positions.size());
  }
  if (occupied < 2) {
    throw std::invalid_argument("click_histogram: clicks occupy fewer than two bins");
  }
  return h;
}

double fit_objective(const Histogram& hist, const SourceEnsemble& shape, double p0, double p1) {
  return objective(hist, model_bin_masses(hist, shape), p0, p1);
}

FitResult fit_p1(const ClickSample& sample, const SourceEnsemble& shape, const FitOptions& opt) {
  if (sample.n_pulses() == 0 || sample.positions.empty()) {
    throw std::invalid_argument("fit_p1: sample has no clicks");
  }
  const double p0 = static_cast<double>(sample.n_null) / static_cast<double>(sample.n_pulses());
  const double upper = 1.0 - p0;
  const Histogram hist = click_histogram(sample, shape.one_el.dk(), opt);
  const BinMasses masses = model_bin_masses(hist, shape);

  std::size_t evals = 0;
  auto f = [&](double p1) {
    ++evals;
    return objective(hist, masses, p0, p1);
  };

  // Unimodality scan on 101 points.
  constexpr std::size_t kScan = 101;
  std::vector<double> scan(kScan);
  for (std::size_t i = 0; i < kScan; ++i) {
    scan[i] = f(upper * static_cast<double>(i) / static_cast<double>(kScan - 1));
  }
  std::size_t local_minima = 0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < kScan; ++i) {
    const bool left_ok = i == 0 || scan[i] < scan[i - 1];
    const bool right_ok = i + 1 == kScan || scan[i] <= scan[i + 1];
    if (left_ok && right_ok) {
      ++local_minima;
    }
    if (scan[i] < scan[best]) {
      best = i;
    }
  }
  const bool unimodal = local_minima == 1;

  double lo = 0.0;
  double hi = upper;
  if (!unimodal) {
    // Refine around the best scan point instead of trusting a global bracket.
    const double step = upper / static_cast<double>(kScan - 1);
    lo = std::max(0.0, upper * static_cast<double>(best) / static_cast<double>(kScan - 1) - step);
    hi = std::min(upper, lo + 2.0 * step);
  }
  // 24 bits keeps the bracket well under the 1e-4 absolute tolerance.
  const auto r = boost::math::tools::brent_find_minima(f, lo, hi, 24);
  double p1 = r.first;
  double sse = r.second;
  if (scan[best] < sse) {
    p1 = upper * static_cast<double>(best) / static_cast<double>(kScan - 1);
    sse = scan[best];
  }
  return {p0, p1, upper - p1, sse, evals, unimodal};
}

}  // namespace fermipulse
