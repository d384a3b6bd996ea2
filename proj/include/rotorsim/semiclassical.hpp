#pragma once
#include <numbers>
#include <vector>

#include "rotorsim/dynamics.hpp"
#include "rotorsim/molecule.hpp"

namespace rotorsim {

struct SemiclassicalTrajectory {
  std::vector<double> n, k, J, H;
  double H0 = 0.0;
  double max_drift = 0.0;  // |H - H0| / max(|H0|, P/2)
};

struct BlochParams {
  double P = 3.0;
  double k0 = std::numbers::pi / 4;  // maximal initial group velocity; band is pi-periodic
  double J0 = 0.0;
  double n_max = 32.0;
  double dt = 1e-3;
  double delta = 0.0;        // optional train-period detuning -> +pi*delta*J(J+1) term
  int samples_per_unit = 10; // recording stride
};

// U(J) with the detuning extension; the sign follows the one-cycle free phase.
double lattice_potential(const MoleculeParams& p, double J, double delta);

SemiclassicalTrajectory integrate_bloch(const MoleculeParams& p, const BlochParams& bp);

// J_R from H conservation: -(P/2)cos(2 k0) + U(J0) = P/2 + U(J_R); bisection to 1e-10.
double turning_point(const MoleculeParams& p, double P, double k0, double J0);

struct CompareReport {
  double rms = 0.0;       // quantum mean_j vs |J(n)| at integer n
  int quantum_peak_n = 0;
  int semiclassical_peak_n = 0;
  int peak_offset = 0;
};

CompareReport compare_quantum_semiclassical(const std::vector<EvolutionRecord>& recs,
                                            const SemiclassicalTrajectory& traj);

}  // namespace rotorsim
