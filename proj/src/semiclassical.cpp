#include "rotorsim/semiclassical.hpp"

#include <cmath>
#include <numbers>

#include "rotorsim/errors.hpp"

namespace rotorsim {

namespace {
constexpr double kPi = std::numbers::pi;

struct Deriv {
  double dk, dJ;
};

Deriv rhs(const MoleculeParams& p, double P, double delta, double k, double J) {
  const double x = J * (J + 1.0);
  const double dxdJ = 2.0 * J + 1.0;
  // dU/dJ for U = -pi(1+delta)(D/B)x^2 + pi*delta*x
  const double dU = -kPi * (1.0 + delta) * p.dob() * 2.0 * x * dxdJ + kPi * delta * dxdJ;
  return {-dU, P * std::sin(2.0 * k)};
}
}  // namespace

double lattice_potential(const MoleculeParams& p, double J, double delta) {
  const double x = J * (J + 1.0);
  return -kPi * (1.0 + delta) * p.dob() * x * x + kPi * delta * x;
}

SemiclassicalTrajectory integrate_bloch(const MoleculeParams& p, const BlochParams& bp) {
  p.validate();
  if (!(bp.dt > 0.0)) throw ConfigError("integrator step must be > 0");
  if (bp.n_max < 0.0) throw ConfigError("n_max must be >= 0");
  if (bp.samples_per_unit < 1) throw ConfigError("samples_per_unit must be >= 1");

  auto H = [&](double k, double J) {
    return -(bp.P / 2.0) * std::cos(2.0 * k) + lattice_potential(p, J, bp.delta);
  };

  SemiclassicalTrajectory tr;
  double k = bp.k0, J = bp.J0;
  tr.H0 = H(k, J);
  const double scale = std::max({std::abs(tr.H0), bp.P / 2.0, 1e-300});
  const long steps = std::lround(bp.n_max / bp.dt);
  const long stride = std::max(1L, std::lround(1.0 / (bp.dt * bp.samples_per_unit)));

  auto record = [&](long i) {
    tr.n.push_back(i * bp.dt);
    tr.k.push_back(k);
    tr.J.push_back(J);
    tr.H.push_back(H(k, J));
  };
  record(0);
  for (long i = 1; i <= steps; ++i) {
    const double h = bp.dt;
    const Deriv k1 = rhs(p, bp.P, bp.delta, k, J);
    const Deriv k2 = rhs(p, bp.P, bp.delta, k + 0.5 * h * k1.dk, J + 0.5 * h * k1.dJ);
    const Deriv k3 = rhs(p, bp.P, bp.delta, k + 0.5 * h * k2.dk, J + 0.5 * h * k2.dJ);
    const Deriv k4 = rhs(p, bp.P, bp.delta, k + h * k3.dk, J + h * k3.dJ);
    k += h / 6.0 * (k1.dk + 2.0 * k2.dk + 2.0 * k3.dk + k4.dk);
    J += h / 6.0 * (k1.dJ + 2.0 * k2.dJ + 2.0 * k3.dJ + k4.dJ);
    const double drift = std::abs(H(k, J) - tr.H0) / scale;
    tr.max_drift = std::max(tr.max_drift, drift);
    if (drift > 1e-8)
      throw HDriftError("Hamiltonian drift " + std::to_string(drift) + " at n = " +
                        std::to_string(i * bp.dt));
    if (i % stride == 0 || i == steps) record(i);
  }
  return tr;
}

double turning_point(const MoleculeParams& p, double P, double k0, double J0) {
  p.validate();
  if (P < 0.0) throw ConfigError("P must be >= 0");
  if (p.D <= 0.0) throw NoWallError("turning point undefined for D = 0 (no lattice potential)");
  const double H0 = -(P / 2.0) * std::cos(2.0 * k0) + lattice_potential(p, J0, 0.0);
  // U(J_R) = H0 - P/2, U monotone decreasing for J >= 0
  const double target = H0 - P / 2.0;
  auto f = [&](double J) { return lattice_potential(p, J, 0.0) - target; };
  if (f(J0) <= 0.0) return J0;  // no excursion (P = 0 at the band bottom etc.)
  const double x = std::sqrt(-target / (kPi * p.dob()));
  double hi = std::max(J0 + 1.0, -0.5 + 0.5 * std::sqrt(1.0 + 4.0 * x)) + 2.0;
  while (f(hi) > 0.0) hi *= 2.0;
  double lo = J0;
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {
// first local maximum (the orbit later swings to -1-J_R, where |J| tops the
// first excursion, so a global argmax would land on the wrong turning point)
int first_peak(const std::vector<double>& v) {
  for (size_t i = 1; i + 1 < v.size(); ++i)
    if (v[i] >= v[i - 1] && v[i] > v[i + 1]) return static_cast<int>(i);
  int best = 0;
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = static_cast<int>(i);
  return best;
}
}  // namespace

CompareReport compare_quantum_semiclassical(const std::vector<EvolutionRecord>& recs,
                                            const SemiclassicalTrajectory& traj) {
  CompareReport rep;
  if (recs.empty()) throw ConfigError("empty quantum record set");
  // |J| at integer n, from the recorded samples
  std::vector<double> sj;
  for (size_t i = 0; i < traj.n.size(); ++i) {
    const double frac = traj.n[i] - std::round(traj.n[i]);
    if (std::abs(frac) < 1e-9 && std::round(traj.n[i]) == static_cast<double>(sj.size()))
      sj.push_back(std::abs(traj.J[i]));
  }
  const size_t N = std::min(recs.size(), sj.size());
  if (N < 2) throw ConfigError("trajectory does not cover the quantum record range");
  std::vector<double> qj(N);
  double acc = 0.0;
  for (size_t n = 0; n < N; ++n) {
    qj[n] = recs[n].mean_j;
    const double d = qj[n] - sj[n];
    acc += d * d;
  }
  sj.resize(N);
  rep.rms = std::sqrt(acc / N);
  rep.quantum_peak_n = first_peak(qj);
  rep.semiclassical_peak_n = first_peak(sj);
  rep.peak_offset = std::abs(rep.quantum_peak_n - rep.semiclassical_peak_n);
  return rep;
}

}  // namespace rotorsim
