#include "fermipulse/coulomb.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "fermipulse/constants.hpp"
#include "fermipulse/degeneracy.hpp"

namespace fermipulse {

namespace {

using constants::coulomb_constant;
using constants::electron_mass;
using constants::elementary_charge;
using constants::hbar;

double coupling_strength(const CoulombScenario& s) {
  return s.coupling * coulomb_constant * elementary_charge * elementary_charge;
}

}  // namespace

void CoulombScenario::validate() const {
  if (!(x0_rel > 0.0) || !(L_detector > 0.0) || !(v_com > 0.0)) {
    throw std::invalid_argument("CoulombScenario: x0_rel, L_detector and v_com must be > 0");
  }
  if (!std::isfinite(p0_rel) || !std::isfinite(coupling) || coupling < 0.0) {
    throw std::invalid_argument("CoulombScenario: invalid p0_rel or coupling");
  }
  if (dims != 1 && dims != 2) {
    throw std::invalid_argument("CoulombScenario: dims must be 1 or 2");
  }
  if (dims == 2 && !(transverse_factor >= 1.0)) {
    throw std::invalid_argument("CoulombScenario: transverse_factor must be >= 1");
  }
}

CoulombScenario pair_scenario(const SourceEnsemble& ens, double detector_x_m) {
  const auto& pair = ens.two_el;
  const double ka = pair.a().k0()[0];
  const double kb = pair.b().k0()[0];
  CoulombScenario s;
  s.p0_rel = hbar * std::abs(ka - kb);
  s.x0_rel = 1.0 / (std::sqrt(2.0) * pair.dk());
  s.L_detector = detector_x_m;
  s.v_com = hbar * (ka + kb) / (2.0 * electron_mass);
  s.validate();
  return s;
}

double total_energy(const CoulombScenario& s) {
  s.validate();
  return s.p0_rel * s.p0_rel / electron_mass + coupling_strength(s) / s.x0_rel;
}

double relative_momentum(const CoulombScenario& s, double x) {
  if (!(x >= s.x0_rel)) {
    throw std::domain_error("relative_momentum: x must be >= x0_rel");
  }
  // m E0 - m kq^2/x = p0^2 + m kq^2 (1/x0 - 1/x), free of cancellation.
  const double gain = electron_mass * coupling_strength(s) * (x - s.x0_rel) / (x * s.x0_rel);
  return std::sqrt(s.p0_rel * s.p0_rel + gain);
}

double terminal_momentum(const CoulombScenario& s) {
  return std::sqrt(electron_mass * total_energy(s));
}

TrajectoryResult integrate_relative_motion(const CoulombScenario& s, double rel_tol) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;  // {x, p}
  s.validate();
  const double kq2 = coupling_strength(s);
  const double e0 = total_energy(s);
  const double t_det = s.t_detector();
  auto rhs = [&](const State& y, State& dydt, double) {
    dydt[0] = 2.0 * y[1] / electron_mass;
    dydt[1] = kq2 / (y[0] * y[0]);
  };
  const double e_scale = e0 > 0.0 ? e0 : 1.0;
  double max_err = 0.0;
  std::size_t steps = 0;
  auto observe = [&](const State& y, double) {
    const double e = y[1] * y[1] / electron_mass + kq2 / y[0];
    max_err = std::max(max_err, std::abs(e - e0) / e_scale);
    ++steps;
  };
  State y{s.x0_rel, s.p0_rel};
  // x ~ 1e-8 m and p ~ 1e-26 kg m/s; keep the absolute floor below both.
  const double abs_tol = rel_tol * 1e-30;
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(abs_tol, rel_tol);
  const double dt0 = std::min(t_det, s.x0_rel / std::max(s.v_com, 1.0)) * 1e-3;
  try {
    odeint::integrate_adaptive(stepper, rhs, y, 0.0, t_det, dt0, observe);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("integrate_relative_motion: integration failed: ") + e.what());
  }
  if (!(std::isfinite(y[0]) && std::isfinite(y[1]))) {
    throw std::runtime_error("integrate_relative_motion: non-finite state");
  }
  if (max_err > 1e-9) {
    std::ostringstream msg;
    msg << "integrate_relative_motion: energy drift " << max_err << " exceeds 1e-9 after " << steps
        << " steps";
    throw std::runtime_error(msg.str());
  }
  return {y[0], y[1], t_det, max_err, steps};
}

double separation_at_detector(const CoulombScenario& s) { return integrate_relative_motion(s).x_det; }

double dispersion_ratio(double dk, double t) {
  if (!(dk > 0.0)) {
    throw std::invalid_argument("dispersion_ratio: dk must be > 0");
  }
  return std::sqrt(alpha(t, dk));
}

PancakeResult pancake_comparison(const CoulombScenario& longitudinal, double dk, double transverse_factor) {
  if (!(transverse_factor >= 1.0)) {
    throw std::invalid_argument("pancake_comparison: transverse_factor must be >= 1");
  }
  CoulombScenario radial = longitudinal;
  radial.dims = 2;
  radial.transverse_factor = transverse_factor;
  radial.x0_rel = longitudinal.x0_rel * std::sqrt(1.0 + transverse_factor * transverse_factor);
  const double t_det = longitudinal.t_detector();
  const double r_det = separation_at_detector(radial);
  PancakeResult out{};
  out.r0 = radial.x0_rel;
  out.r_det = r_det;
  out.quantum_ratio = dispersion_ratio(dk, t_det) * dispersion_ratio(dk / transverse_factor, t_det);
  out.coulomb_ratio = (out.r0 * out.r0) / (r_det * r_det);
  return out;
}

std::vector<MomentumCurvePoint> momentum_curve(const CoulombScenario& s, double x_max, std::size_t n) {
  if (n < 2 || !(x_max > s.x0_rel)) {
    throw std::invalid_argument("momentum_curve: need n >= 2 and x_max > x0");
  }
  std::vector<MomentumCurvePoint> out(n);
  const double l0 = std::log(s.x0_rel);
  const double l1 = std::log(x_max);
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::exp(l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(n - 1));
    if (i == 0) {
      x = s.x0_rel;
    } else if (i + 1 == n) {
      x = x_max;
    }
    out[i] = {x, relative_momentum(s, x)};
  }
  return out;
}

}  // namespace fermipulse
