#pragma once
#include <cmath>

#include "rotorsim/errors.hpp"
#include "rotorsim/molecule.hpp"

namespace rotorsim {

struct WallEstimate {
  double j_anderson = 0.0;
  int j_anderson_rounded = 0;  // nearest multiple of 5, Table-style reporting
};

inline WallEstimate anderson_wall(const MoleculeParams& p) {
  if (p.D <= 0.0)
    throw NoWallError("molecule '" + p.name + "' has D = 0: rigid rotor, no Anderson wall");
  WallEstimate w;
  w.j_anderson = 0.5 * std::cbrt(p.B / p.D);
  w.j_anderson_rounded = static_cast<int>(5.0 * std::round(w.j_anderson / 5.0));
  return w;
}

}  // namespace rotorsim
