#include "fermipulse/detection.hpp"

#include <cmath>
#include <stdexcept>

#include "fermipulse/constants.hpp"
#include "fermipulse/degeneracy.hpp"

namespace fermipulse {

namespace {

using constants::electron_mass;
using constants::hbar;
using constants::pi;

void require_dk(double dk) {
  if (!(dk > 0.0)) {
    throw std::invalid_argument("detection: dk must be > 0");
  }
}

// Gaussian of variance 1/(4 dk^2) centred at 0.
double g0(double x, double dk) { return std::sqrt(2.0 / pi) * dk * std::exp(-2.0 * dk * dk * x * x); }

}  // namespace

Complex packet_envelope(double k0, double dk, double x, double t) {
  require_dk(dk);
  const Complex a{1.0 / (4.0 * dk * dk), hbar * t / (2.0 * electron_mass)};
  const double u = x - hbar * k0 * t / electron_mass;
  const double pre = std::pow(2.0 * pi * dk * dk, -0.25);
  return pre / std::sqrt(2.0 * a) * std::exp(-u * u / (4.0 * a));
}

Complex packet_amplitude(double k0, double dk, double x, double t) {
  const double phase = k0 * x - hbar * k0 * k0 * t / (2.0 * electron_mass);
  return packet_envelope(k0, dk, x, t) * std::polar(1.0, phase);
}

double p1_density(const PacketAxis& p, double x, double t) {
  require_dk(p.dk);
  const double a = alpha(t, p.dk);
  const double u = x - hbar * p.k0 * t / electron_mass;
  return p.dk * std::sqrt(2.0 * a / pi) * std::exp(-2.0 * p.dk * p.dk * a * u * u);
}

JointDensity joint_density_t0(const PairAxis& pair, double x1, double x2) {
  require_dk(pair.dk);
  const double base = 2.0 * pair.dk * pair.dk / pi *
                      std::exp(-2.0 * pair.dk * pair.dk * (x1 * x1 + x2 * x2));
  const double c = std::cos((x1 - x2) * (pair.ka - pair.kb));
  const double ov2 = pair.overlap * pair.overlap;
  JointDensity out{};
  out.sym = base * (1.0 + c) / (1.0 + ov2);
  out.antisym = base * (1.0 - c) / pair.one_minus_overlap2;
  out.total = 0.25 * out.sym + 0.75 * out.antisym;
  return out;
}

JointDensity joint_density(const PairAxis& pair, double x1, double t1, double x2, double t2) {
  const Complex ea1 = packet_envelope(pair.ka, pair.dk, x1, t1);
  const Complex eb1 = packet_envelope(pair.kb, pair.dk, x1, t1);
  const Complex ea2 = packet_envelope(pair.ka, pair.dk, x2, t2);
  const Complex eb2 = packet_envelope(pair.kb, pair.dk, x2, t2);
  // Relative carrier phase of the direct term against the exchange term.
  const double dphi = (pair.ka - pair.kb) * (x1 - x2) -
                      hbar * (pair.ka - pair.kb) * (pair.ka + pair.kb) * (t1 - t2) / (2.0 * electron_mass);
  const Complex direct = ea1 * eb2 * std::polar(1.0, dphi);
  const Complex exchange = eb1 * ea2;
  const double n_plus2 = 1.0 / (2.0 * (1.0 + pair.overlap * pair.overlap));
  const double n_minus2 = 1.0 / (2.0 * pair.one_minus_overlap2);
  JointDensity out{};
  out.sym = n_plus2 * std::norm(direct + exchange);
  out.antisym = n_minus2 * std::norm(direct - exchange);
  out.total = 0.25 * out.sym + 0.75 * out.antisym;
  return out;
}

MarginalDensity marginal_density(const PairAxis& pair, double x) {
  require_dk(pair.dk);
  const double g = g0(x, pair.dk);
  const double c = pair.overlap * std::cos(x * (pair.ka - pair.kb));
  MarginalDensity out{};
  out.sym = g * (1.0 + c) / (1.0 + pair.overlap * pair.overlap);
  out.antisym = g * (1.0 - c) / pair.one_minus_overlap2;
  out.total = 0.25 * out.sym + 0.75 * out.antisym;
  return out;
}

double one_click_mixture(const SourceEnsemble& ens, double x) {
  const double one = ens.p1 == 0.0 ? 0.0 : ens.p1 * p1_density(ens.one_el.axis(0), x, 0.0);
  const double two = ens.p2 == 0.0 ? 0.0 : ens.p2 * marginal_density(ens.two_el.axis(0), x).total;
  return one + two;
}

}  // namespace fermipulse
