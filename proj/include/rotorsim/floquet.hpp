#pragma once
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rotorsim/basis.hpp"
#include "rotorsim/molecule.hpp"
#include "rotorsim/wall.hpp"

namespace rotorsim {

struct FloquetSpectrum {
  BlockBasis basis;
  Eigen::VectorXd quasienergies;  // [0, 2pi), units hbar/t_rev, ascending
  Eigen::MatrixXcd vectors;       // column per state, largest component real > 0
  Eigen::VectorXd participation;  // 1 / sum |v_J|^4
  std::vector<int> peak_J;
  Eigen::VectorXd loc_length;     // exp-tail decay length of |v|^2 in J; NaN if fit rejected
};

enum class StateLabel { extended, transition, localized };
inline const char* to_string(StateLabel l) {
  switch (l) {
    case StateLabel::extended: return "extended";
    case StateLabel::transition: return "transition";
    default: return "localized";
  }
}

struct ClassifyThresholds {
  double pr_loc = 3.0;
  double extended_fraction = 0.5;
};

Eigen::MatrixXcd one_cycle_operator(const MoleculeParams& p, const PulseTrainSpec& train, int M,
                                    int j_max);
FloquetSpectrum floquet_spectrum(const Eigen::MatrixXcd& U, const BlockBasis& basis);
inline FloquetSpectrum floquet_spectrum(const MoleculeParams& p, const PulseTrainSpec& train, int M,
                                        int j_max) {
  return floquet_spectrum(one_cycle_operator(p, train, M, j_max), BlockBasis(M, j_max));
}
std::vector<StateLabel> classify_states(const FloquetSpectrum& s, const WallEstimate& wall,
                                        const ClassifyThresholds& t = {});

// criterion helpers: smallest peak-J above which every state has PR < pr_threshold,
// and the largest J where the summed |v|^2 of extended-labeled states exceeds `support`.
int localized_onset(const FloquetSpectrum& s, double pr_threshold);
std::optional<int> extended_cutoff(const FloquetSpectrum& s, const std::vector<StateLabel>& labels,
                                   double support = 1e-3);

}  // namespace rotorsim
