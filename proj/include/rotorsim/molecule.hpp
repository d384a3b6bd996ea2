#pragma once
#include <map>
#include <string>

#include "rotorsim/errors.hpp"

namespace rotorsim {

// Units: B, D in cm^-1; time in ps where it touches the outside world.
// Internally everything runs in reduced units (hbar = 1, B = 1, time in t_rev).
inline constexpr double kBoltzmannCm = 0.6950348;      // cm^-1 / K
inline constexpr double kSpeedOfLightCmPs = 2.99792458e-2;  // cm / ps

struct MoleculeParams {
  std::string name;
  double B = 0.0;       // cm^-1
  double D = 0.0;       // cm^-1
  double g_even = 1.0;  // nuclear-spin weight of even J
  double g_odd = 1.0;

  double dob() const { return D / B; }
  double t_rev_ps() const { return 1.0 / (2.0 * kSpeedOfLightCmPs * B); }
  double spin_weight(int J) const { return (J % 2 == 0) ? g_even : g_odd; }

  void validate() const {
    if (!(B > 0.0)) throw ConfigError("molecule '" + name + "': B must be > 0");
    if (D < 0.0) throw ConfigError("molecule '" + name + "': D must be >= 0");
    if (D / B >= 1e-2) throw ConfigError("molecule '" + name + "': D/B out of sane range (>= 1e-2)");
    if (g_even < 0.0 || g_odd < 0.0 || g_even + g_odd <= 0.0)
      throw ConfigError("molecule '" + name + "': bad spin weights");
  }
};

// B reconstructed from a revival time in ps: t_rev = pi*hbar/B  <=>  B = 1/(2 c t_rev).
inline MoleculeParams molecule_from_trev(const std::string& name, double trev_ps, double d_over_b,
                                         double g_even, double g_odd) {
  MoleculeParams p;
  p.name = name;
  p.B = 1.0 / (2.0 * kSpeedOfLightCmPs * trev_ps);
  p.D = p.B * d_over_b;
  p.g_even = g_even;
  p.g_odd = g_odd;
  return p;
}

struct PulseTrainSpec {
  double P = 0.0;     // kick strength
  int N = 0;          // pulse count
  double delta = 0.0; // fractional detuning, tau = t_rev*(1+delta)

  void validate() const {
    if (P < 0.0) throw ConfigError("kick strength P must be >= 0");
    if (N < 0) throw ConfigError("pulse count must be >= 0");
    if (!(delta > -0.5 && delta < 0.5)) throw ConfigError("|detuning| must be < 0.5");
  }
};

// E_J in units of B (hbar = 1): J(J+1) - (D/B) J^2 (J+1)^2.
inline double energy_level(int J, const MoleculeParams& p) {
  const double x = static_cast<double>(J) * (J + 1);
  return x - p.dob() * x * x;
}

using MoleculeDatabase = std::map<std::string, MoleculeParams>;

// The eight bundled species; constants reconstructed from printed revival times.
MoleculeDatabase builtin_database();
// Merge a JSON database file over the builtins. Missing file -> builtins only
// unless `required` is set.
MoleculeDatabase load_database(const std::string& path, bool required);
const MoleculeParams& lookup(const MoleculeDatabase& db, const std::string& name);

}  // namespace rotorsim
