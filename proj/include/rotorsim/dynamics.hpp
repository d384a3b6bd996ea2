#pragma once
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rotorsim/basis.hpp"
#include "rotorsim/molecule.hpp"

namespace rotorsim {

struct EvolutionRecord {
  int n = 0;
  Eigen::VectorXd p;  // over J = 0..j_max (M-summed for ensembles)
  double mean_j = 0.0;
  double mean_energy = 0.0;  // units of B
  double alignment = 0.0;    // <cos^2 theta>, post-kick
};

struct ThermalEnsembleSpec {
  double temperature = 0.0;     // K
  double population_cutoff = 0.999;

  void validate() const {
    if (!(temperature > 0.0)) throw ConfigError("temperature must be > 0");
    if (!(population_cutoff > 0.9 && population_cutoff < 1.0))
      throw ConfigError("population_cutoff must lie in (0.9, 1)");
  }
};

struct ThermalBranch {
  int J0;
  int M0;        // >= 0; +-M folded into the weight
  double weight; // normalized over the selected set
};

// Whole (J0, all M0) shells in increasing J0 until the cutoff is reached;
// keeps the M sum rule (pre-train alignment exactly 1/3) intact.
std::vector<ThermalBranch> enumerate_thermal_branches(const MoleculeParams& p,
                                                      const ThermalEnsembleSpec& ens);

std::vector<EvolutionRecord> evolve_pure(const MoleculeParams& p, const PulseTrainSpec& train,
                                         int J0, int M0, int j_max);

// OpenMP over branches; per-branch results are reduced in fixed branch order,
// so output is identical to the serial reference bit for bit.
std::vector<EvolutionRecord> evolve_thermal(const MoleculeParams& p, const PulseTrainSpec& train,
                                            const ThermalEnsembleSpec& ens, int j_max);
// plain ordered loop, kept as the reference for equivalence tests
std::vector<EvolutionRecord> evolve_thermal_serial(const MoleculeParams& p,
                                                   const PulseTrainSpec& train,
                                                   const ThermalEnsembleSpec& ens, int j_max);

double rotational_energy(const MoleculeParams& p, const EvolutionRecord& rec);

// (t in units of tau, <cos^2>) sampled at uniform sub-intervals of the free
// evolution after each kick.
std::vector<std::pair<double, double>> sample_alignment_trace(const MoleculeParams& p,
                                                              const PulseTrainSpec& train, int J0,
                                                              int M0, int j_max,
                                                              int samples_per_period);
std::vector<std::pair<double, double>> sample_alignment_trace_thermal(
    const MoleculeParams& p, const PulseTrainSpec& train, const ThermalEnsembleSpec& ens,
    int j_max, int samples_per_period);

}  // namespace rotorsim
