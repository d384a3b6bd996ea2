#include <algorithm>
#include <iostream>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rotorsim/dynamics.hpp"
#include "rotorsim/floquet.hpp"
#include "rotorsim/io.hpp"
#include "rotorsim/semiclassical.hpp"
#include "rotorsim/version.hpp"
#include "rotorsim/wall.hpp"

namespace {

using namespace rotorsim;

struct MoleculeOpts {
  std::string molecule;
  double B = 0.0, D = 0.0;
  double g_even = 1.0, g_odd = 1.0;
  std::string database;

  void attach(CLI::App* cmd) {
    cmd->add_option("--molecule", molecule, "molecule name from the database");
    cmd->add_option("--B", B, "inline rotational constant B (cm^-1), alternative to --molecule");
    cmd->add_option("--D", D, "inline centrifugal distortion D (cm^-1)");
    cmd->add_option("--g-even", g_even, "inline spin weight of even J");
    cmd->add_option("--g-odd", g_odd, "inline spin weight of odd J");
    cmd->add_option("--database", database, "molecule database JSON (merged over builtins)");
  }

  MoleculeParams resolve(ConfigEcho& echo) const {
    MoleculeParams p;
    if (!molecule.empty()) {
      const MoleculeDatabase db =
          database.empty() ? builtin_database() : load_database(database, true);
      p = lookup(db, molecule);
    } else if (B > 0.0) {
      p.name = "inline";
      p.B = B;
      p.D = D;
      p.g_even = g_even;
      p.g_odd = g_odd;
    } else {
      throw ConfigError("specify --molecule or an inline --B");
    }
    p.validate();
    echo["molecule"] = p.name;
    echo["B_cm1"] = fmt_g(p.B);
    echo["D_cm1"] = fmt_g(p.D);
    echo["g_even"] = fmt_g(p.g_even);
    echo["g_odd"] = fmt_g(p.g_odd);
    return p;
  }
};

struct OutOpts {
  std::string out = "-";
  std::string format = "csv";

  void attach(CLI::App* cmd) {
    cmd->add_option("--out", out, "output path ('-' = stdout)");
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }
};

std::string sibling_path(const std::string& main_path, const std::string& tag) {
  const size_t dot = main_path.find_last_of('.');
  const size_t slash = main_path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return main_path + "." + tag;
  return main_path.substr(0, dot) + "." + tag + main_path.substr(dot);
}

int resolve_jmax(std::optional<int> user, const MoleculeParams& p, int J0, int N, double P,
                 ConfigEcho& echo) {
  int jm;
  if (user) {
    jm = *user;
    echo["j_max_rule"] = "user";
  } else {
    const double ja = p.D > 0.0 ? anderson_wall(p).j_anderson : 0.0;
    jm = auto_j_max(ja, J0, N, P);
    echo["j_max_rule"] = "auto max(2*J_A, J0+4*N*sqrt(P), 80)";
  }
  echo["j_max"] = std::to_string(jm);
  return jm;
}

int run(int argc, char** argv) {
  CLI::App app{std::string(kToolName) +
               " - kicked linear molecules: Floquet localization and Bloch oscillations"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.set_config("--config", "",
                 "INI config file; put subcommand options in a [subcommand] section; "
                 "flags override it");
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 ok; 2 bad configuration; 3 unknown molecule; 4 invalid basis;\n"
      "5 basis truncation leak; 6 numerical quality (unitarity/normality/norm drift);\n"
      "7 semiclassical Hamiltonian drift; 8 no Anderson wall (D = 0).\n"
      "CLI parsing errors use CLI11's own codes (>= 100).");

  // ---- wall ----
  auto* wall_cmd = app.add_subcommand("wall", "Anderson-wall estimate 0.5*(B/D)^(1/3)");
  auto mol_w = std::make_shared<MoleculeOpts>();
  auto out_w = std::make_shared<OutOpts>();
  auto all_w = std::make_shared<bool>(false);
  mol_w->attach(wall_cmd);
  out_w->attach(wall_cmd);
  wall_cmd->add_flag("--all", *all_w, "tabulate every molecule in the database");
  wall_cmd->callback([mol_w, out_w, all_w]() {
    ConfigEcho echo;
    std::vector<std::pair<MoleculeParams, WallEstimate>> rows;
    if (*all_w) {
      const MoleculeDatabase db = mol_w->database.empty() ? builtin_database()
                                                          : load_database(mol_w->database, true);
      echo["molecule"] = "(all)";
      for (const auto& [name, p] : db) rows.emplace_back(p, anderson_wall(p));
    } else {
      const MoleculeParams p = mol_w->resolve(echo);
      rows.emplace_back(p, anderson_wall(p));
    }
    echo["command"] = "wall";
    write_output(out_w->out,
                 out_w->format == "json" ? wall_json(rows, echo) : wall_csv(rows));
  });

  // ---- floquet ----
  auto* flo_cmd = app.add_subcommand("floquet", "quasienergy spectrum of the one-cycle operator");
  auto mol_f = std::make_shared<MoleculeOpts>();
  auto out_f = std::make_shared<OutOpts>();
  struct FloOpts {
    double P = 3.0;
    double delta = 0.0;
    int M = 0;
    std::optional<int> jmax;
    double pr_loc = 3.0;
    double extended_fraction = 0.5;
  };
  auto fo = std::make_shared<FloOpts>();
  mol_f->attach(flo_cmd);
  out_f->attach(flo_cmd);
  flo_cmd->add_option("--P", fo->P, "kick strength");
  flo_cmd->add_option("--detuning", fo->delta, "fractional train-period detuning");
  flo_cmd->add_option("--m0", fo->M, "M block");
  flo_cmd->add_option("--jmax", fo->jmax, "basis cutoff (default: auto rule)");
  flo_cmd->add_option("--pr-loc-threshold", fo->pr_loc, "PR bound for the localized label");
  flo_cmd->add_option("--extended-fraction", fo->extended_fraction,
                      "extended label: PR > fraction * (sites below the wall)");
  flo_cmd->callback([mol_f, out_f, fo]() {
    ConfigEcho echo;
    const MoleculeParams p = mol_f->resolve(echo);
    echo["command"] = "floquet";
    echo["P"] = fmt_g(fo->P);
    echo["detuning"] = fmt_g(fo->delta);
    echo["m0"] = std::to_string(fo->M);
    PulseTrainSpec train{fo->P, 1, fo->delta};
    const int jm = resolve_jmax(fo->jmax, p, std::abs(fo->M), 1, fo->P, echo);
    const BlockBasis basis(fo->M, jm);
    const FloquetSpectrum spec = floquet_spectrum(one_cycle_operator(p, train, fo->M, jm), basis);
    WallEstimate wall{};
    if (p.D > 0.0) wall = anderson_wall(p);
    else wall.j_anderson = std::numeric_limits<double>::infinity();
    const std::vector<StateLabel> labels =
        classify_states(spec, wall, {fo->pr_loc, fo->extended_fraction});
    write_output(out_f->out, out_f->format == "json" ? floquet_json(spec, labels, echo)
                                                     : floquet_csv(spec, labels));
  });

  // ---- evolve ----
  auto* evo_cmd = app.add_subcommand("evolve", "N-pulse train dynamics (pure or thermal)");
  auto mol_e = std::make_shared<MoleculeOpts>();
  auto out_e = std::make_shared<OutOpts>();
  struct EvoOpts {
    double P = 3.0;
    int N = 32;
    double delta = 0.0;
    std::optional<int> J0;
    int M0 = 0;
    std::optional<double> temperature;
    double cutoff = 0.999;
    std::optional<int> jmax;
    int trace_samples = 0;
    bool serial = false;
  };
  auto eo = std::make_shared<EvoOpts>();
  mol_e->attach(evo_cmd);
  out_e->attach(evo_cmd);
  evo_cmd->add_option("--P", eo->P, "kick strength");
  evo_cmd->add_option("--pulses", eo->N, "number of pulses");
  evo_cmd->add_option("--detuning", eo->delta, "fractional train-period detuning");
  evo_cmd->add_option("--j0", eo->J0, "pure initial J0 (exclusive with --temperature)");
  evo_cmd->add_option("--m0", eo->M0, "pure initial M0");
  evo_cmd->add_option("--temperature", eo->temperature, "thermal ensemble temperature (K)");
  evo_cmd->add_option("--population-cutoff", eo->cutoff, "thermal cumulative weight kept");
  evo_cmd->add_option("--jmax", eo->jmax, "basis cutoff (default: auto rule)");
  evo_cmd->add_option("--trace-samples", eo->trace_samples,
                      "if > 0, also emit an intra-period alignment trace with this many "
                      "samples per period");
  evo_cmd->add_flag("--serial", eo->serial, "use the serial reference path (thermal runs)");
  evo_cmd->callback([mol_e, out_e, eo]() {
    ConfigEcho echo;
    const MoleculeParams p = mol_e->resolve(echo);
    echo["command"] = "evolve";
    echo["P"] = fmt_g(eo->P);
    echo["pulses"] = std::to_string(eo->N);
    echo["detuning"] = fmt_g(eo->delta);
    const PulseTrainSpec train{eo->P, eo->N, eo->delta};
    if (eo->J0 && eo->temperature) throw ConfigError("--j0 and --temperature are exclusive");
    if (!eo->J0 && !eo->temperature) throw ConfigError("need --j0 (pure) or --temperature");

    std::vector<EvolutionRecord> recs;
    std::vector<std::pair<double, double>> trace;
    if (eo->J0) {
      echo["initial"] = "pure";
      echo["j0"] = std::to_string(*eo->J0);
      echo["m0"] = std::to_string(eo->M0);
      const int jm = resolve_jmax(eo->jmax, p, *eo->J0, eo->N, eo->P, echo);
      recs = evolve_pure(p, train, *eo->J0, eo->M0, jm);
      if (eo->trace_samples > 0)
        trace = sample_alignment_trace(p, train, *eo->J0, eo->M0, jm, eo->trace_samples);
    } else {
      echo["initial"] = "thermal";
      echo["temperature_K"] = fmt_g(*eo->temperature);
      echo["population_cutoff"] = fmt_g(eo->cutoff);
      const ThermalEnsembleSpec ens{*eo->temperature, eo->cutoff};
      const auto branches = enumerate_thermal_branches(p, ens);
      const int j0_top = branches.empty() ? 0 : branches.back().J0;
      echo["thermal_branches"] = std::to_string(branches.size());
      echo["thermal_j0_top"] = std::to_string(j0_top);
      const int jm = resolve_jmax(eo->jmax, p, j0_top, eo->N, eo->P, echo);
      recs = eo->serial ? evolve_thermal_serial(p, train, ens, jm)
                        : evolve_thermal(p, train, ens, jm);
      if (eo->trace_samples > 0)
        trace = sample_alignment_trace_thermal(p, train, ens, jm, eo->trace_samples);
    }

    if (out_e->format == "json") {
      write_output(out_e->out, evolution_json(recs, echo, trace));
    } else {
      write_output(out_e->out, evolution_csv(recs));
      if (out_e->out != "-" && !out_e->out.empty()) {
        write_output(sibling_path(out_e->out, "summary"), evolution_summary_csv(recs));
        if (!trace.empty())
          write_output(sibling_path(out_e->out, "trace"), trace_csv(trace));
      }
    }
  });

  // ---- semiclassical ----
  auto* sem_cmd = app.add_subcommand("semiclassical", "Bloch-oscillation companion model");
  auto mol_s = std::make_shared<MoleculeOpts>();
  auto out_s = std::make_shared<OutOpts>();
  auto bp = std::make_shared<BlochParams>();
  bp->k0 = std::numbers::pi / 4.0;
  mol_s->attach(sem_cmd);
  out_s->attach(sem_cmd);
  sem_cmd->add_option("--P", bp->P, "kick strength");
  sem_cmd->add_option("--k0", bp->k0, "initial quasimomentum");
  sem_cmd->add_option("--j0", bp->J0, "initial lattice coordinate (continuous)");
  sem_cmd->add_option("--pulses", bp->n_max, "integration horizon in pulse counts");
  sem_cmd->add_option("--dt", bp->dt, "integrator step");
  sem_cmd->add_option("--detuning", bp->delta, "fractional train-period detuning");
  sem_cmd->add_option("--samples-per-pulse", bp->samples_per_unit, "recorded samples per unit n");
  sem_cmd->callback([mol_s, out_s, bp]() {
    ConfigEcho echo;
    const MoleculeParams p = mol_s->resolve(echo);
    echo["command"] = "semiclassical";
    echo["P"] = fmt_g(bp->P);
    echo["k0"] = fmt_g(bp->k0);
    echo["j0"] = fmt_g(bp->J0);
    echo["pulses"] = fmt_g(bp->n_max);
    echo["dt"] = fmt_g(bp->dt);
    echo["detuning"] = fmt_g(bp->delta);
    const SemiclassicalTrajectory tr = integrate_bloch(p, *bp);
    write_output(out_s->out, out_s->format == "json" ? semiclassical_json(tr, echo)
                                                     : semiclassical_csv(tr));
  });

  CLI11_PARSE(app, argc, argv);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const rotorsim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rotorsim::kConfigError;
  }
}
