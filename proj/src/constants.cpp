#include "fermipulse/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace fermipulse {

double energy_to_wavenumber(double energy_ev) {
  if (!std::isfinite(energy_ev) || energy_ev < 0.0) {
    throw std::domain_error("energy_to_wavenumber: energy must be finite and >= 0");
  }
  using namespace constants;
  return std::sqrt(2.0 * electron_mass * energy_ev * ev_to_joule) / hbar;
}

double wavenumber_to_energy(double k) {
  if (!std::isfinite(k)) {
    throw std::domain_error("wavenumber_to_energy: non-finite wavenumber");
  }
  using namespace constants;
  return hbar * hbar * k * k / (2.0 * electron_mass) / ev_to_joule;
}

double energy_spread_to_dk(double spread_ev, double k0) {
  if (!std::isfinite(spread_ev) || spread_ev < 0.0) {
    throw std::domain_error("energy_spread_to_dk: spread must be finite and >= 0");
  }
  if (!std::isfinite(k0) || k0 <= 0.0) {
    throw std::domain_error("energy_spread_to_dk: k0 must be > 0");
  }
  using namespace constants;
  return electron_mass * spread_ev * ev_to_joule / (hbar * hbar * k0);
}

}  // namespace fermipulse
