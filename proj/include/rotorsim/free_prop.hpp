#pragma once
#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "rotorsim/basis.hpp"
#include "rotorsim/molecule.hpp"

namespace rotorsim {

// exp(-i pi t [J(J+1) - (D/B) J^2(J+1)^2]) per J.  Both terms are reduced
// mod 2 before multiplying by pi so the resonant rigid-rotor propagator is
// the identity to the last bit (J(J+1) is even).
inline Eigen::VectorXcd free_propagator_phases(const MoleculeParams& p, double tau_over_trev,
                                               int M, int j_max) {
  const BlockBasis b(M, j_max);
  const double dob = p.dob();
  Eigen::VectorXcd ph(b.size());
  for (int i = 0; i < b.size(); ++i) {
    const double x = static_cast<double>(b.J_of(i)) * (b.J_of(i) + 1);
    const double rig = std::fmod(tau_over_trev * x, 2.0);
    const double dis = std::fmod(tau_over_trev * dob * x * x, 2.0);
    const double arg = -std::numbers::pi * (rig - dis);
    ph[i] = std::complex<double>(std::cos(arg), std::sin(arg));
  }
  return ph;
}

}  // namespace rotorsim
