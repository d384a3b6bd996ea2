#include "rotorsim/dynamics.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rotorsim/cos2.hpp"
#include "rotorsim/free_prop.hpp"
#include "rotorsim/kick.hpp"

namespace rotorsim {

namespace {

struct BlockOps {
  BlockBasis basis;
  std::unique_ptr<KickOperator> kick;
  Cos2Matrix c2;
  Eigen::VectorXcd ph;
};

BlockOps make_ops(const MoleculeParams& p, const PulseTrainSpec& train, int M, int j_max) {
  BlockOps ops;
  ops.basis = BlockBasis(M, j_max);
  ops.kick = std::make_unique<KickOperator>(train.P, M, j_max);
  const double defect = ops.kick->max_unitarity_defect();
  if (defect > 1e-12)
    throw NumericalQualityError("kick operator unitarity defect " + std::to_string(defect));
  ops.c2 = cos2_matrix(M, j_max);
  ops.ph = free_propagator_phases(p, 1.0 + train.delta, M, j_max);
  return ops;
}

EvolutionRecord observe(const MoleculeParams& p, const BlockOps& ops, const Eigen::VectorXcd& c,
                        int n, int j_max) {
  EvolutionRecord r;
  r.n = n;
  r.p = Eigen::VectorXd::Zero(j_max + 1);
  for (int i = 0; i < ops.basis.size(); ++i) r.p[ops.basis.J_of(i)] = std::norm(c[i]);
  r.mean_j = 0.0;
  r.mean_energy = 0.0;
  for (int J = 0; J <= j_max; ++J) {
    r.mean_j += r.p[J] * J;
    r.mean_energy += r.p[J] * energy_level(J, p);
  }
  r.alignment = alignment_expectation(ops.c2, c);
  return r;
}

// one pulse-train evolution on a fixed-M block; shared by pure and thermal paths
std::vector<EvolutionRecord> run_block(const MoleculeParams& p, const PulseTrainSpec& train,
                                       const BlockOps& ops, int J0, int j_max) {
  Eigen::VectorXcd c = RotorBlockState::pure(ops.basis, J0).c;
  std::vector<EvolutionRecord> recs;
  recs.reserve(train.N + 1);
  recs.push_back(observe(p, ops, c, 0, j_max));

  const int nb = ops.basis.size();
  const int top_start = nb - std::max(1, nb / 10);
  for (int n = 1; n <= train.N; ++n) {
    c = ops.kick->apply(c);
    double leak = 0.0;
    for (int i = top_start; i < nb; ++i) leak += std::norm(c[i]);
    if (leak > 1e-8)
      throw TruncationLeakError("truncation leak " + std::to_string(leak) + " at pulse " +
                                    std::to_string(n) + " (j_max=" + std::to_string(j_max) + ")",
                                n);
    const double drift = std::abs(c.squaredNorm() - 1.0);
    if (drift > 1e-9)
      throw NumericalQualityError("norm drift " + std::to_string(drift) + " at pulse " +
                                  std::to_string(n));
    recs.push_back(observe(p, ops, c, n, j_max));
    c = ops.ph.cwiseProduct(c).eval();
  }
  return recs;
}

std::vector<EvolutionRecord> reduce_in_order(const std::vector<ThermalBranch>& branches,
                                             const std::vector<std::vector<EvolutionRecord>>& per,
                                             int N, int j_max) {
  std::vector<EvolutionRecord> out(N + 1);
  for (int n = 0; n <= N; ++n) {
    out[n].n = n;
    out[n].p = Eigen::VectorXd::Zero(j_max + 1);
  }
  for (size_t b = 0; b < branches.size(); ++b) {
    const double w = branches[b].weight;
    for (int n = 0; n <= N; ++n) {
      out[n].p += w * per[b][n].p;
      out[n].mean_j += w * per[b][n].mean_j;
      out[n].mean_energy += w * per[b][n].mean_energy;
      out[n].alignment += w * per[b][n].alignment;
    }
  }
  return out;
}

}  // namespace

std::vector<ThermalBranch> enumerate_thermal_branches(const MoleculeParams& p,
                                                      const ThermalEnsembleSpec& ens) {
  p.validate();
  ens.validate();
  const double kT = kBoltzmannCm * ens.temperature / p.B;  // units of B

  // total partition sum first (shells fall off fast; 4000 is far past any
  // molecule here at any sane temperature)
  double Z = 0.0;
  int j_top = 0;
  for (int J = 0; J < 4000; ++J) {
    const double shell = p.spin_weight(J) * (2.0 * J + 1.0) * std::exp(-energy_level(J, p) / kT);
    Z += shell;
    j_top = J;
    if (J > 2 && shell < Z * 1e-18) break;
  }

  std::vector<ThermalBranch> branches;
  double kept = 0.0;
  for (int J = 0; J <= j_top; ++J) {
    const double bolt = p.spin_weight(J) * std::exp(-energy_level(J, p) / kT);
    for (int M = 0; M <= J; ++M)
      branches.push_back({J, M, bolt * (M > 0 ? 2.0 : 1.0)});
    kept += bolt * (2.0 * J + 1.0);
    if (kept / Z >= ens.population_cutoff) break;
  }
  const double wsum = std::accumulate(branches.begin(), branches.end(), 0.0,
                                      [](double a, const ThermalBranch& b) { return a + b.weight; });
  for (auto& b : branches) b.weight /= wsum;
  return branches;
}

std::vector<EvolutionRecord> evolve_pure(const MoleculeParams& p, const PulseTrainSpec& train,
                                         int J0, int M0, int j_max) {
  p.validate();
  train.validate();
  const BlockOps ops = make_ops(p, train, M0, j_max);
  return run_block(p, train, ops, J0, j_max);
}

std::vector<EvolutionRecord> evolve_thermal(const MoleculeParams& p, const PulseTrainSpec& train,
                                            const ThermalEnsembleSpec& ens, int j_max) {
  train.validate();
  const std::vector<ThermalBranch> branches = enumerate_thermal_branches(p, ens);
  const int nb = static_cast<int>(branches.size());

  // kick/cos2/phases per distinct M, built up front and shared read-only
  std::map<int, BlockOps> ops;
  for (const auto& b : branches)
    if (!ops.count(b.M0)) ops.emplace(b.M0, make_ops(p, train, b.M0, j_max));

  std::vector<std::vector<EvolutionRecord>> per(nb);
  std::exception_ptr first_error = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int b = 0; b < nb; ++b) {
    try {
      per[b] = run_block(p, train, ops.at(branches[b].M0), branches[b].J0, j_max);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return reduce_in_order(branches, per, train.N, j_max);
}

std::vector<EvolutionRecord> evolve_thermal_serial(const MoleculeParams& p,
                                                   const PulseTrainSpec& train,
                                                   const ThermalEnsembleSpec& ens, int j_max) {
  train.validate();
  const std::vector<ThermalBranch> branches = enumerate_thermal_branches(p, ens);
  std::map<int, BlockOps> ops;
  std::vector<std::vector<EvolutionRecord>> per(branches.size());
  for (size_t b = 0; b < branches.size(); ++b) {
    if (!ops.count(branches[b].M0))
      ops.emplace(branches[b].M0, make_ops(p, train, branches[b].M0, j_max));
    per[b] = run_block(p, train, ops.at(branches[b].M0), branches[b].J0, j_max);
  }
  return reduce_in_order(branches, per, train.N, j_max);
}

double rotational_energy(const MoleculeParams& p, const EvolutionRecord& rec) {
  double e = 0.0;
  for (int J = 0; J < rec.p.size(); ++J) e += rec.p[J] * energy_level(J, p);
  return e;
}

namespace {
std::vector<std::pair<double, double>> trace_block(const MoleculeParams& p,
                                                   const PulseTrainSpec& train, const BlockOps& ops,
                                                   int J0, int samples) {
  Eigen::VectorXcd c = RotorBlockState::pure(ops.basis, J0).c;
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<size_t>(train.N) * samples);
  // kick at the start of each period, then sample the free segment
  std::vector<Eigen::VectorXcd> sub(samples);
  for (int s = 0; s < samples; ++s)
    sub[s] = free_propagator_phases(p, (1.0 + train.delta) * s / samples, ops.basis.M,
                                    ops.basis.j_max);
  for (int n = 1; n <= train.N; ++n) {
    c = ops.kick->apply(c);
    for (int s = 0; s < samples; ++s)
      out.emplace_back(n - 1 + static_cast<double>(s) / samples,
                       alignment_expectation(ops.c2, sub[s].cwiseProduct(c)));
    c = ops.ph.cwiseProduct(c).eval();
  }
  return out;
}
}  // namespace

std::vector<std::pair<double, double>> sample_alignment_trace(const MoleculeParams& p,
                                                              const PulseTrainSpec& train, int J0,
                                                              int M0, int j_max,
                                                              int samples_per_period) {
  if (samples_per_period < 1) throw ConfigError("samples_per_period must be >= 1");
  p.validate();
  train.validate();
  const BlockOps ops = make_ops(p, train, M0, j_max);
  return trace_block(p, train, ops, J0, samples_per_period);
}

std::vector<std::pair<double, double>> sample_alignment_trace_thermal(
    const MoleculeParams& p, const PulseTrainSpec& train, const ThermalEnsembleSpec& ens,
    int j_max, int samples_per_period) {
  if (samples_per_period < 1) throw ConfigError("samples_per_period must be >= 1");
  train.validate();
  const std::vector<ThermalBranch> branches = enumerate_thermal_branches(p, ens);
  std::map<int, BlockOps> ops;
  for (const auto& b : branches)
    if (!ops.count(b.M0)) ops.emplace(b.M0, make_ops(p, train, b.M0, j_max));

  std::vector<std::vector<std::pair<double, double>>> per(branches.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int b = 0; b < static_cast<int>(branches.size()); ++b)
    per[b] = trace_block(p, train, ops.at(branches[b].M0), branches[b].J0, samples_per_period);

  std::vector<std::pair<double, double>> out = per.empty() ? decltype(out){} : per[0];
  for (auto& [t, v] : out) v = 0.0;
  for (size_t b = 0; b < branches.size(); ++b)
    for (size_t i = 0; i < out.size(); ++i) out[i].second += branches[b].weight * per[b][i].second;
  return out;
}

}  // namespace rotorsim
