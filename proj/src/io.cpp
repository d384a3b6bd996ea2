#include "rotorsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "rotorsim/version.hpp"

namespace rotorsim {

using nlohmann::ordered_json;

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {
ordered_json meta(const ConfigEcho& echo) {
  ordered_json m;
  m["tool"] = kToolName;
  m["version"] = kVersion;
  ordered_json cfg;
  for (const auto& [k, v] : echo) cfg[k] = v;
  m["config"] = cfg;
  return m;
}

std::string maybe(double v) { return std::isnan(v) ? std::string() : fmt_g(v); }
}  // namespace

std::string wall_csv(const std::vector<std::pair<MoleculeParams, WallEstimate>>& rows) {
  std::ostringstream os;
  os << "molecule,B_cm1,D_cm1,t_rev_ps,d_over_b,j_anderson,j_anderson_rounded\n";
  for (const auto& [p, w] : rows)
    os << p.name << ',' << fmt_g(p.B) << ',' << fmt_g(p.D) << ',' << fmt_g(p.t_rev_ps()) << ','
       << fmt_g(p.dob()) << ',' << fmt_g(w.j_anderson) << ',' << w.j_anderson_rounded << '\n';
  return os.str();
}

std::string wall_json(const std::vector<std::pair<MoleculeParams, WallEstimate>>& rows,
                      const ConfigEcho& echo) {
  ordered_json j;
  j["meta"] = meta(echo);
  j["walls"] = ordered_json::array();
  for (const auto& [p, w] : rows) {
    ordered_json r;
    r["molecule"] = p.name;
    r["B_cm1"] = p.B;
    r["D_cm1"] = p.D;
    r["t_rev_ps"] = p.t_rev_ps();
    r["d_over_b"] = p.dob();
    r["j_anderson"] = w.j_anderson;
    r["j_anderson_rounded"] = w.j_anderson_rounded;
    j["walls"].push_back(r);
  }
  return j.dump(2) + "\n";
}

std::string floquet_csv(const FloquetSpectrum& s, const std::vector<StateLabel>& labels) {
  std::ostringstream os;
  os << "state_index,quasienergy,peak_J,participation_ratio,localization_length,label\n";
  for (int k = 0; k < s.basis.size(); ++k)
    os << k << ',' << fmt_g(s.quasienergies[k]) << ',' << s.peak_J[k] << ','
       << fmt_g(s.participation[k]) << ',' << maybe(s.loc_length[k]) << ','
       << to_string(labels[k]) << '\n';
  return os.str();
}

std::string floquet_json(const FloquetSpectrum& s, const std::vector<StateLabel>& labels,
                         const ConfigEcho& echo) {
  ordered_json j;
  j["meta"] = meta(echo);
  j["states"] = ordered_json::array();
  for (int k = 0; k < s.basis.size(); ++k) {
    ordered_json r;
    r["state_index"] = k;
    r["quasienergy"] = s.quasienergies[k];
    r["peak_J"] = s.peak_J[k];
    r["participation_ratio"] = s.participation[k];
    if (std::isnan(s.loc_length[k]))
      r["localization_length"] = nullptr;
    else
      r["localization_length"] = s.loc_length[k];
    r["label"] = to_string(labels[k]);
    j["states"].push_back(r);
  }
  return j.dump(2) + "\n";
}

std::string evolution_csv(const std::vector<EvolutionRecord>& recs) {
  std::ostringstream os;
  os << "n,J,p\n";
  for (const auto& r : recs)
    for (int J = 0; J < r.p.size(); ++J) os << r.n << ',' << J << ',' << fmt_g(r.p[J]) << '\n';
  return os.str();
}

std::string evolution_summary_csv(const std::vector<EvolutionRecord>& recs) {
  std::ostringstream os;
  os << "n,mean_j,alignment,energy\n";
  for (const auto& r : recs)
    os << r.n << ',' << fmt_g(r.mean_j) << ',' << fmt_g(r.alignment) << ','
       << fmt_g(r.mean_energy) << '\n';
  return os.str();
}

std::string evolution_json(const std::vector<EvolutionRecord>& recs, const ConfigEcho& echo,
                           const std::vector<std::pair<double, double>>& trace) {
  ordered_json j;
  j["meta"] = meta(echo);
  j["records"] = ordered_json::array();
  for (const auto& r : recs) {
    ordered_json rec;
    rec["n"] = r.n;
    rec["mean_j"] = r.mean_j;
    rec["alignment"] = r.alignment;
    rec["energy"] = r.mean_energy;
    rec["p"] = ordered_json::array();
    for (int J = 0; J < r.p.size(); ++J) rec["p"].push_back(r.p[J]);
    j["records"].push_back(rec);
  }
  if (!trace.empty()) {
    j["trace"] = ordered_json::array();
    for (const auto& [t, v] : trace) {
      ordered_json s;
      s["t"] = t;
      s["alignment"] = v;
      j["trace"].push_back(s);
    }
  }
  return j.dump(2) + "\n";
}

std::string trace_csv(const std::vector<std::pair<double, double>>& trace) {
  std::ostringstream os;
  os << "t,alignment\n";
  for (const auto& [t, v] : trace) os << fmt_g(t) << ',' << fmt_g(v) << '\n';
  return os.str();
}

std::string semiclassical_csv(const SemiclassicalTrajectory& tr) {
  std::ostringstream os;
  os << "n,k,J,H\n";
  for (size_t i = 0; i < tr.n.size(); ++i)
    os << fmt_g(tr.n[i]) << ',' << fmt_g(tr.k[i]) << ',' << fmt_g(tr.J[i]) << ','
       << fmt_g(tr.H[i]) << '\n';
  return os.str();
}

std::string semiclassical_json(const SemiclassicalTrajectory& tr, const ConfigEcho& echo) {
  ordered_json j;
  j["meta"] = meta(echo);
  j["H0"] = tr.H0;
  j["max_drift"] = tr.max_drift;
  j["samples"] = ordered_json::array();
  for (size_t i = 0; i < tr.n.size(); ++i) {
    ordered_json s;
    s["n"] = tr.n[i];
    s["k"] = tr.k[i];
    s["J"] = tr.J[i];
    s["H"] = tr.H[i];
    j["samples"].push_back(s);
  }
  return j.dump(2) + "\n";
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << content;
}

}  // namespace rotorsim
