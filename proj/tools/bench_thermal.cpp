// Serial vs OpenMP thermal evolution benchmark; also asserts the two paths
// agree bit for bit, since the parallel reduction is fixed-order.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rotorsim/basis.hpp"
#include "rotorsim/dynamics.hpp"
#include "rotorsim/molecule.hpp"
#include "rotorsim/wall.hpp"

using namespace rotorsim;
using Clock = std::chrono::steady_clock;

namespace {

double run(std::vector<EvolutionRecord> (*f)(const MoleculeParams&, const PulseTrainSpec&,
                                             const ThermalEnsembleSpec&, int),
           const MoleculeParams& m, const PulseTrainSpec& train, const ThermalEnsembleSpec& ens,
           int j_max, std::vector<EvolutionRecord>& out) {
  const auto t0 = Clock::now();
  out = f(m, train, ens, j_max);
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  double temperature = 298.0;
  int pulses = 32;
  if (argc >= 2) temperature = std::atof(argv[1]);
  if (argc >= 3) pulses = std::atoi(argv[2]);

  const auto mol = lookup(builtin_database(), "N2");
  const PulseTrainSpec train{3.0, pulses, 0.0};
  const ThermalEnsembleSpec ens{temperature, 0.999};
  const auto branches = enumerate_thermal_branches(mol, ens);
  int j0_top = 0;
  for (const auto& b : branches) j0_top = std::max(j0_top, b.J0);
  const int j_max = auto_j_max(anderson_wall(mol).j_anderson, j0_top, pulses, train.P);

#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  std::printf("thermal bench: N2, T = %g K, %d pulses, %zu branches, j_max = %d, %d thread(s)\n",
              temperature, pulses, branches.size(), j_max, threads);

  std::vector<EvolutionRecord> serial, parallel;
  const double ws = run(evolve_thermal_serial, mol, train, ens, j_max, serial);
  const double wp = run(evolve_thermal, mol, train, ens, j_max, parallel);

  bool identical = serial.size() == parallel.size();
  for (size_t i = 0; identical && i < serial.size(); ++i)
    identical = serial[i].p == parallel[i].p && serial[i].mean_j == parallel[i].mean_j &&
                serial[i].alignment == parallel[i].alignment;

  std::printf("  serial reference : %8.3f s\n", ws);
  std::printf("  parallel         : %8.3f s\n", wp);
  std::printf("  speedup          : %8.2fx\n", ws / wp);
  std::printf("  bitwise identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
