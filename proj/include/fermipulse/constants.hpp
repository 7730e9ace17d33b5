#pragma once

// Physical constants (CODATA 2018) and the energy <-> wavenumber conversions
// used to set up packets from beam energy and energy spread.

namespace fermipulse {

struct PhysicalConstants {
  double hbar;         // J s
  double m_e;          // kg
  double q_e;          // C
  double k_coulomb;    // N m^2 / C^2
  double ev_to_joule;  // J / eV
};

inline constexpr PhysicalConstants kCodata2018{
    1.054571817e-34,
    9.1093837015e-31,
    1.602176634e-19,
    8.9875517923e9,
    1.602176634e-19,
};

namespace constants {
inline constexpr double hbar = kCodata2018.hbar;
inline constexpr double electron_mass = kCodata2018.m_e;
inline constexpr double elementary_charge = kCodata2018.q_e;
inline constexpr double coulomb_constant = kCodata2018.k_coulomb;
inline constexpr double ev_to_joule = kCodata2018.ev_to_joule;
inline constexpr double pi = 3.14159265358979323846;
}  // namespace constants

/// Non-relativistic wavenumber k = sqrt(2 m E) / hbar for a kinetic energy in eV.
/// Throws std::domain_error for negative or non-finite energies.
double energy_to_wavenumber(double energy_ev);

/// Inverse of energy_to_wavenumber, in eV.
double wavenumber_to_energy(double k);

/// Linearised wavenumber spread dk = m dE / (hbar^2 k0).
/// Throws std::domain_error if dE < 0 or k0 <= 0.
double energy_spread_to_dk(double spread_ev, double k0);

}  // namespace fermipulse
