#pragma once
#include <map>
#include <string>
#include <vector>

#include "rotorsim/dynamics.hpp"
#include "rotorsim/floquet.hpp"
#include "rotorsim/molecule.hpp"
#include "rotorsim/semiclassical.hpp"
#include "rotorsim/wall.hpp"

namespace rotorsim {

// %.12g everywhere; all emission is index-ordered so identical configs give
// identical bytes.
std::string fmt_g(double v);

using ConfigEcho = std::map<std::string, std::string>;

std::string wall_csv(const std::vector<std::pair<MoleculeParams, WallEstimate>>& rows);
std::string wall_json(const std::vector<std::pair<MoleculeParams, WallEstimate>>& rows,
                      const ConfigEcho& echo);

std::string floquet_csv(const FloquetSpectrum& s, const std::vector<StateLabel>& labels);
std::string floquet_json(const FloquetSpectrum& s, const std::vector<StateLabel>& labels,
                         const ConfigEcho& echo);

std::string evolution_csv(const std::vector<EvolutionRecord>& recs);
std::string evolution_summary_csv(const std::vector<EvolutionRecord>& recs);
std::string evolution_json(const std::vector<EvolutionRecord>& recs, const ConfigEcho& echo,
                           const std::vector<std::pair<double, double>>& trace = {});

std::string trace_csv(const std::vector<std::pair<double, double>>& trace);

std::string semiclassical_csv(const SemiclassicalTrajectory& tr);
std::string semiclassical_json(const SemiclassicalTrajectory& tr, const ConfigEcho& echo);

// "-" or empty -> stdout
void write_output(const std::string& path, const std::string& content);

}  // namespace rotorsim
