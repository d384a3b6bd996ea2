#include "rotorsim/molecule.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rotorsim {

// Table constants: revival time (ps), D/B, spin weights g_even:g_odd.
MoleculeDatabase builtin_database() {
  MoleculeDatabase db;
  auto add = [&db](const char* name, double trev, double dob, double ge, double go) {
    db.emplace(name, molecule_from_trev(name, trev, dob, ge, go));
  };
  add("H2", 0.281, 794e-6, 1, 3);
  add("N2", 8.383, 2.90e-6, 2, 1);
  add("Cl2", 68.57, 0.765e-6, 6, 10);
  add("ICl", 146.4, 0.354e-6, 1, 1);
  add("CO2", 42.74, 0.343e-6, 1, 0);
  add("Br2", 203.5, 0.255e-6, 6, 10);
  add("OCS", 82.22, 0.214e-6, 1, 1);
  add("I2", 447.0, 0.107e-6, 15, 21);
  return db;
}

MoleculeDatabase load_database(const std::string& path, bool required) {
  MoleculeDatabase db = builtin_database();
  std::ifstream in(path);
  if (!in) {
    if (required) throw ConfigError("cannot open molecule database '" + path + "'");
    return db;
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("molecule database '" + path + "': " + e.what());
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const nlohmann::json& e = it.value();
    MoleculeParams p;
    p.name = it.key();
    p.g_even = e.value("g_even", 1.0);
    p.g_odd = e.value("g_odd", 1.0);
    if (e.contains("B_cm1")) {
      p.B = e.at("B_cm1").get<double>();
      p.D = e.value("D_cm1", 0.0);
    } else if (e.contains("t_rev_ps")) {
      const double trev = e.at("t_rev_ps").get<double>();
      if (!(trev > 0.0)) throw ConfigError("molecule '" + p.name + "': t_rev_ps must be > 0");
      p.B = 1.0 / (2.0 * kSpeedOfLightCmPs * trev);
      p.D = p.B * e.value("d_over_b", 0.0);
    } else {
      throw ConfigError("molecule '" + p.name + "': need B_cm1 or t_rev_ps");
    }
    p.validate();
    db[p.name] = p;
  }
  return db;
}

const MoleculeParams& lookup(const MoleculeDatabase& db, const std::string& name) {
  auto it = db.find(name);
  if (it == db.end()) {
    std::ostringstream os;
    os << "unknown molecule '" << name << "'; available:";
    for (const auto& [k, v] : db) os << ' ' << k;
    throw UnknownMoleculeError(os.str());
  }
  return it->second;
}

}  // namespace rotorsim
