#pragma once
#include <cmath>
#include <limits>
#include <numbers>

#include "rotorsim/molecule.hpp"

namespace rotorsim {

struct SiteEnergy {
  double value = 0.0;
  bool pole = false;  // tan argument within 1e-8 of pi/2 + m*pi
};

// T(J) = tan[tau (eps - E_J) / (2 hbar)]; eps_b and E_J in units of B.
inline SiteEnergy tightbinding_site_energy(const MoleculeParams& p, double eps_b, int J,
                                           double tau_over_trev) {
  const double m = 0.5 * tau_over_trev * (eps_b - energy_level(J, p));  // arg / pi
  const double frac = m - std::round(m);                                // (-1/2, 1/2]
  const double red = frac * std::numbers::pi;
  SiteEnergy s;
  if (std::numbers::pi / 2.0 - std::abs(red) < 1e-8) {
    s.pole = true;
    s.value = std::copysign(std::numeric_limits<double>::infinity(), red);
    return s;
  }
  s.value = std::tan(red);
  return s;
}

// Resonant pseudorandom phase (rigid part drops out mod pi):
// phi(J) = (pi/2) [eps_b + (D/B) J^2 (J+1)^2], unreduced.
inline double resonant_site_phase(const MoleculeParams& p, double eps_b, int J) {
  const double x = static_cast<double>(J) * (J + 1);
  return 0.5 * std::numbers::pi * (eps_b + p.dob() * x * x);
}

// phi(J+2) - phi(J); ~ 4 pi (D/B) J^3 for large J, reaching ~pi/2 at the wall.
inline double site_phase_increment(const MoleculeParams& p, int J) {
  return resonant_site_phase(p, 0.0, J + 2) - resonant_site_phase(p, 0.0, J);
}

}  // namespace rotorsim
