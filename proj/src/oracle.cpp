#include "fermipulse/oracle.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fermipulse/constants.hpp"
#include "fermipulse/kernels.hpp"
#include "fermipulse/quadrature.hpp"

namespace fermipulse::oracle {

namespace {

using constants::electron_mass;
using constants::hbar;
using constants::pi;

constexpr std::size_t kOrder = 16;
constexpr double kRadPerPanel = 8.0;
// L1 norm of exp(-s^2/4); sets the absolute convergence floor.
const double kIntegrandMass = 2.0 * std::sqrt(pi);

double chirp_beta(double dk, double t) { return hbar * t * dk * dk / (2.0 * electron_mass); }

// Total variation of U s - beta s^2 over [-L, L].
double phase_variation(double U, double beta, double L) {
  auto phi = [&](double s) { return U * s - beta * s * s; };
  if (beta != 0.0) {
    const double s_star = U / (2.0 * beta);
    if (s_star > -L && s_star < L) {
      return std::abs(phi(L) - phi(s_star)) + std::abs(phi(s_star) - phi(-L));
    }
  }
  return std::abs(phi(L) - phi(-L));
}

Complex scaled_integral(double U, double beta, double L, std::size_t panels) {
  const auto& rule = quadrature::gauss_legendre(kOrder);
  const double h = 2.0 * L / static_cast<double>(panels);
  kernels::ChirpProblem prob{Complex{0.25, beta}, U,  -L + 0.5 * h,       0.5 * h,
                             panels,             rule.nodes.data(), rule.weights.data(), kOrder};
  return kernels::chirp_panels(prob) * (0.5 * h);
}

// Detector windows are narrow against the packet, so a low-order rule per
// panel suffices and halves the number of k-space evaluations. The absolute
// floor sits far below the envelope noise of quadrature_envelope relative to
// the peak density; without it, windows in the far tails chase that noise.
quadrature::AdaptiveOptions window_options(const QuadratureSpec& spec, double dk, double t, double width) {
  const double r = 2.0 * hbar * dk * dk * t / electron_mass;
  const double peak_density = std::sqrt(2.0 / (pi * (1.0 + r * r))) * dk;
  quadrature::AdaptiveOptions opt;
  opt.rel_tol = spec.rel_tol;
  opt.abs_tol = 1e-13 * peak_density * width;
  opt.order = 8;
  return opt;
}

double carrier_phase(double k, double x, double t) {
  return k * x - hbar * k * k * t / (2.0 * electron_mass);
}

}  // namespace

void QuadratureSpec::validate() const {
  if (n_k < 16 || n_x < 16) {
    throw std::invalid_argument("QuadratureSpec: n_k and n_x must be >= 16");
  }
  if (!(rel_tol > 0.0)) {
    throw std::invalid_argument("QuadratureSpec: rel_tol must be > 0");
  }
  if (!(k_halfwidth_in_dk > 0.0)) {
    throw std::invalid_argument("QuadratureSpec: k_halfwidth_in_dk must be > 0");
  }
}

std::size_t panel_count(double dk, double x_minus_center, double t, const QuadratureSpec& spec) {
  const double L = spec.k_halfwidth_in_dk;
  const double var = phase_variation(x_minus_center * dk, chirp_beta(dk, t), L);
  const auto by_nodes = (spec.n_k + kOrder - 1) / kOrder;
  const auto by_phase = static_cast<std::size_t>(std::ceil(var / kRadPerPanel)) + 1;
  return std::max(by_nodes, by_phase);
}

Complex quadrature_envelope(double k0, double dk, double x, double t, const QuadratureSpec& spec) {
  spec.validate();
  if (!(dk > 0.0)) {
    throw std::invalid_argument("quadrature_envelope: dk must be > 0");
  }
  const double u = x - hbar * k0 * t / electron_mass;
  const double U = u * dk;
  const double beta = chirp_beta(dk, t);
  const double L = spec.k_halfwidth_in_dk;
  const std::size_t n = panel_count(dk, u, t, spec);
  const Complex coarse = scaled_integral(U, beta, L, n);
  const Complex fine = scaled_integral(U, beta, L, 2 * n);
  const double tol = spec.rel_tol * std::abs(fine) + 1e-12 * kIntegrandMass;
  if (std::abs(fine - coarse) > tol) {
    std::ostringstream msg;
    msg << "quadrature_envelope: no convergence under panel doubling (panels=" << n
        << ", change=" << std::abs(fine - coarse) << ", value=" << std::abs(fine) << ")";
    throw std::runtime_error(msg.str());
  }
  const double pre = std::pow(2.0 * pi * dk * dk, -0.25) * dk / std::sqrt(2.0 * pi);
  return pre * fine;
}

Complex quadrature_amplitude(double k0, double dk, double x, double t, const QuadratureSpec& spec) {
  return quadrature_envelope(k0, dk, x, t, spec) * std::polar(1.0, carrier_phase(k0, x, t));
}

double quadrature_overlap_axis(double ka, double kb, double dk, const QuadratureSpec& spec) {
  spec.validate();
  const double L = spec.k_halfwidth_in_dk * dk;
  const double lo = std::min(ka, kb) - L;
  const double hi = std::max(ka, kb) + L;
  const double norm = std::pow(2.0 * pi * dk * dk, -0.5);
  auto f = [&](double k) {
    return norm * std::exp(-((k - ka) * (k - ka) + (k - kb) * (k - kb)) / (4.0 * dk * dk));
  };
  const auto panels = (spec.n_k + kOrder - 1) / kOrder;
  return quadrature::integrate_composite<double>(f, lo, hi, panels, kOrder);
}

double quadrature_overlap(const TwoElectronPacket& pair, const QuadratureSpec& spec) {
  double prod = 1.0;
  for (int i = 0; i < 3; ++i) {
    prod *= quadrature_overlap_axis(pair.a().axis(i).k0, pair.b().axis(i).k0, pair.dk(), spec);
  }
  return prod;
}

double quadrature_density(double x_lo, double x_hi, double k0, double dk, double t,
                          const QuadratureSpec& spec) {
  if (!(x_lo < x_hi)) {
    throw std::invalid_argument("quadrature_density: requires x_lo < x_hi");
  }
  auto f = [&](double x) { return std::norm(quadrature_envelope(k0, dk, x, t, spec)); };
  return quadrature::integrate_adaptive<double>(f, x_lo, x_hi, window_options(spec, dk, t, x_hi - x_lo));
}

double quadrature_density(const DetectorWindow& det, const GaussianPacket3D& p, double t,
                          const QuadratureSpec& spec) {
  std::array<double, 3> mass{};
  double prod = 1.0;
  for (int i = 0; i < 3; ++i) {
    int same = -1;
    for (int j = 0; j < i; ++j) {
      if (det.lo(j) == det.lo(i) && det.hi(j) == det.hi(i) && p.axis(j).k0 == p.axis(i).k0) {
        same = j;
      }
    }
    const auto idx = static_cast<std::size_t>(i);
    mass[idx] = same >= 0 ? mass[static_cast<std::size_t>(same)]
                          : quadrature_density(det.lo(i), det.hi(i), p.axis(i).k0, p.dk(), t, spec);
    prod *= mass[idx];
  }
  return prod;
}

double quadrature_total_mass(double k0, double dk, double t, const QuadratureSpec& spec) {
  spec.validate();
  // Width of |psi|^2 grows as sqrt(1 + (2 hbar dk^2 t / m)^2) / (2 dk).
  const double r = 2.0 * hbar * dk * dk * t / electron_mass;
  const double sigma = std::sqrt(1.0 + r * r) / (2.0 * dk);
  const double c = hbar * k0 * t / electron_mass;
  auto f = [&](double x) { return std::norm(quadrature_envelope(k0, dk, x, t, spec)); };
  const auto panels = (spec.n_x + kOrder - 1) / kOrder;
  return quadrature::integrate_composite<double>(f, c - 12.0 * sigma, c + 12.0 * sigma, panels, kOrder);
}

double quadrature_density2(Symmetry sym, const PairAxis& pair, double x1, double t1, double x2,
                           double t2, const QuadratureSpec& spec) {
  const Complex ea1 = quadrature_envelope(pair.ka, pair.dk, x1, t1, spec);
  const Complex eb1 = quadrature_envelope(pair.kb, pair.dk, x1, t1, spec);
  const Complex ea2 = quadrature_envelope(pair.ka, pair.dk, x2, t2, spec);
  const Complex eb2 = quadrature_envelope(pair.kb, pair.dk, x2, t2, spec);
  const double ov = quadrature_overlap_axis(pair.ka, pair.kb, pair.dk, spec);
  // Carrier phase of the direct term relative to the exchange term, expanded
  // so that the ~1e10 rad absolute phases cancel analytically.
  const double q = pair.ka - pair.kb;
  const double dphi = q * (x1 - x2) - hbar * q * (pair.ka + pair.kb) * (t1 - t2) / (2.0 * electron_mass);
  const Complex direct = ea1 * eb2 * std::polar(1.0, dphi);
  const Complex exchange = eb1 * ea2;
  if (sym == Symmetry::Symmetric) {
    return std::norm(direct + exchange) / (2.0 * (1.0 + ov * ov));
  }
  return std::norm(direct - exchange) / (2.0 * (1.0 - ov * ov));
}

namespace {

// Window integrals I_aa, I_bb and J = int E_a conj(E_b) exp(i (ka - kb)(x - hbar (ka + kb) t / 2m)).
struct AxisIntegrals {
  double i_aa;
  double i_bb;
  Complex j_ab;
};

AxisIntegrals axis_integrals(double x_lo, double x_hi, double ka, double kb, double dk, double t,
                             const QuadratureSpec& spec) {
  const double q = ka - kb;
  const double shift = hbar * (ka + kb) * t / (2.0 * electron_mass);
  auto f = [&](double x) {
    const Complex ea = quadrature_envelope(ka, dk, x, t, spec);
    const Complex eb = ka == kb ? ea : quadrature_envelope(kb, dk, x, t, spec);
    const Complex cross = ea * std::conj(eb) * std::polar(1.0, q * (x - shift));
    return std::array<double, 4>{std::norm(ea), std::norm(eb), cross.real(), cross.imag()};
  };
  const auto r = quadrature::integrate_adaptive<std::array<double, 4>>(f, x_lo, x_hi, window_options(spec, dk, t, x_hi - x_lo));
  return {r[0], r[1], Complex{r[2], r[3]}};
}

}  // namespace

double quadrature_density2(Symmetry sym, double x_lo, double x_hi, const PairAxis& pair, double t,
                           const QuadratureSpec& spec) {
  if (!(x_lo < x_hi)) {
    throw std::invalid_argument("quadrature_density2: requires x_lo < x_hi");
  }
  const auto ax = axis_integrals(x_lo, x_hi, pair.ka, pair.kb, pair.dk, t, spec);
  const double ov = quadrature_overlap_axis(pair.ka, pair.kb, pair.dk, spec);
  const double sign = sym == Symmetry::Symmetric ? 1.0 : -1.0;
  const double n2 = 1.0 / (2.0 * (1.0 + sign * ov * ov));
  return 2.0 * n2 * (ax.i_aa + ax.i_bb + sign * 2.0 * ov * ax.j_ab.real());
}

Degeneracy2 quadrature_degeneracy2(const DetectorWindow& det, const TwoElectronPacket& pair, double t,
                                   const QuadratureSpec& spec) {
  double prod_aa = 1.0;
  double prod_bb = 1.0;
  Complex prod_j{1.0, 0.0};
  std::array<AxisIntegrals, 3> done{};
  for (int i = 0; i < 3; ++i) {
    const double ka = pair.a().axis(i).k0;
    const double kb = pair.b().axis(i).k0;
    // Transverse axes usually repeat the same window and wavenumbers.
    int same = -1;
    for (int j = 0; j < i; ++j) {
      if (det.lo(j) == det.lo(i) && det.hi(j) == det.hi(i) && pair.a().axis(j).k0 == ka &&
          pair.b().axis(j).k0 == kb) {
        same = j;
      }
    }
    const auto ax = same >= 0 ? done[static_cast<std::size_t>(same)]
                              : axis_integrals(det.lo(i), det.hi(i), ka, kb, pair.dk(), t, spec);
    done[static_cast<std::size_t>(i)] = ax;
    prod_aa *= ax.i_aa;
    prod_bb *= ax.i_bb;
    prod_j *= ax.j_ab;
  }
  const double ov = quadrature_overlap(pair, spec);
  const double ov2 = ov * ov;
  const double direct = prod_aa + prod_bb;
  const double cross = 2.0 * ov * prod_j.real();
  // 2 N^2 = 1 / (1 +- ov^2)
  return {(direct + cross) / (1.0 + ov2), (direct - cross) / (1.0 - ov2)};
}

double quadrature_density2(Symmetry sym, const DetectorWindow& det, const TwoElectronPacket& pair,
                           double t, const QuadratureSpec& spec) {
  const auto d = quadrature_degeneracy2(det, pair, t, spec);
  return sym == Symmetry::Symmetric ? d.sym : d.antisym;
}

}  // namespace fermipulse::oracle
