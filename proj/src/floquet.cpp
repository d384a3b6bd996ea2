#include "rotorsim/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>

#include "rotorsim/free_prop.hpp"
#include "rotorsim/kick.hpp"

namespace rotorsim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// decay length of |v|^2 ~ exp(-(J - J_peak)/len) over the tail; NaN when the
// fit has too few points or too much scatter (resonant clusters are not
// single exponentials).
double tail_length(const std::vector<int>& Js, const std::vector<double>& p, int peak_pos) {
  std::vector<double> x, y;
  for (size_t k = peak_pos + 1; k < p.size(); ++k) {
    if (p[k] > 1e-14) {
      x.push_back(Js[k] - Js[peak_pos]);
      y.push_back(std::log(p[k]));
    }
  }
  const size_t n = x.size();
  if (n < 3) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t k = 0; k < n; ++k) { sx += x[k]; sy += y[k]; sxx += x[k] * x[k]; sxy += x[k] * y[k]; }
  const double det = n * sxx - sx * sx;
  if (det <= 0) return std::numeric_limits<double>::quiet_NaN();
  const double slope = (n * sxy - sx * sy) / det;
  const double icpt = (sy - slope * sx) / n;
  double rss = 0;
  for (size_t k = 0; k < n; ++k) {
    const double r = y[k] - (icpt + slope * x[k]);
    rss += r * r;
  }
  const double rms = std::sqrt(rss / n);
  if (slope >= 0 || rms > 2.0) return std::numeric_limits<double>::quiet_NaN();
  return -1.0 / slope;
}
}  // namespace

Eigen::MatrixXcd one_cycle_operator(const MoleculeParams& p, const PulseTrainSpec& train, int M,
                                    int j_max) {
  p.validate();
  train.validate();
  const KickOperator kick(train.P, M, j_max);
  const Eigen::VectorXcd ph = free_propagator_phases(p, 1.0 + train.delta, M, j_max);
  Eigen::MatrixXcd U = ph.asDiagonal() * kick.matrix();
  return U;
}

FloquetSpectrum floquet_spectrum(const Eigen::MatrixXcd& U, const BlockBasis& basis) {
  const int n = basis.size();
  if (U.rows() != n || U.cols() != n) throw InvalidBasisError("operator/basis size mismatch");
  {
    const double defect =
        (U.adjoint() * U - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (defect > 1e-10)
      throw NumericalQualityError("one-cycle operator not unitary: defect " + std::to_string(defect));
  }

  struct State {
    double eps;
    Eigen::VectorXcd v;
    double pr;
    int peak;
    double len;
  };
  std::vector<State> states;
  states.reserve(n);

  // even and odd J decouple; full-matrix Schur would mix near-degenerate
  // cross-parity pairs
  for (int par = 0; par < 2; ++par) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (basis.J_of(i) % 2 == par) idx.push_back(i);
    const int m = static_cast<int>(idx.size());
    if (m == 0) continue;
    Eigen::MatrixXcd Up(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) Up(a, b) = U(idx[a], idx[b]);

    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(Up, true);
    if (schur.info() != Eigen::Success) throw NumericalQualityError("Schur decomposition failed");
    const Eigen::MatrixXcd& T = schur.matrixT();
    const Eigen::MatrixXcd& Q = schur.matrixU();
    // normality check: for a unitary input T must be diagonal
    double offd = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) offd = std::max(offd, std::abs(T(a, b)));
    if (offd > 1e-8)
      throw NumericalQualityError("Schur form not diagonal (operator not normal): " +
                                  std::to_string(offd));

    std::vector<int> Js(m);
    for (int a = 0; a < m; ++a) Js[a] = basis.J_of(idx[a]);

    for (int k = 0; k < m; ++k) {
      const std::complex<double> lam = T(k, k);
      if (std::abs(std::abs(lam) - 1.0) > 1e-8)
        throw NumericalQualityError("eigenvalue modulus off unit circle by " +
                                    std::to_string(std::abs(std::abs(lam) - 1.0)));
      State s;
      s.eps = std::fmod(-std::arg(lam) + kTwoPi, kTwoPi);
      s.v = Eigen::VectorXcd::Zero(n);
      std::vector<double> prob(m);
      int peak_pos = 0;
      double pmax = -1.0, p4 = 0.0;
      for (int a = 0; a < m; ++a) {
        const std::complex<double> z = Q(a, k);
        s.v[idx[a]] = z;
        prob[a] = std::norm(z);
        p4 += prob[a] * prob[a];
        if (prob[a] > pmax) { pmax = prob[a]; peak_pos = a; }
      }
      // fix global phase: largest component real positive
      std::complex<double> piv = Q(peak_pos, k);
      if (std::abs(piv) > 0) s.v *= std::conj(piv) / std::abs(piv);
      s.pr = 1.0 / p4;
      s.peak = Js[peak_pos];
      s.len = tail_length(Js, prob, peak_pos);
      states.push_back(std::move(s));
    }
  }

  std::sort(states.begin(), states.end(), [](const State& a, const State& b) {
    if (a.eps != b.eps) return a.eps < b.eps;
    return a.peak < b.peak;
  });

  FloquetSpectrum out;
  out.basis = basis;
  out.quasienergies.resize(n);
  out.vectors.resize(n, n);
  out.participation.resize(n);
  out.loc_length.resize(n);
  out.peak_J.resize(n);
  for (int k = 0; k < n; ++k) {
    out.quasienergies[k] = states[k].eps;
    out.vectors.col(k) = states[k].v;
    out.participation[k] = states[k].pr;
    out.peak_J[k] = states[k].peak;
    out.loc_length[k] = states[k].len;
  }
  return out;
}

std::vector<StateLabel> classify_states(const FloquetSpectrum& s, const WallEstimate& wall,
                                        const ClassifyThresholds& t) {
  const int n = s.basis.size();
  // sites of each parity chain strictly below the wall
  int below[2] = {0, 0};
  for (int i = 0; i < n; ++i) {
    const int J = s.basis.J_of(i);
    if (J < wall.j_anderson) ++below[J % 2];
  }
  std::vector<StateLabel> labels(n);
  for (int k = 0; k < n; ++k) {
    const int par = s.peak_J[k] % 2;
    // the PR <= 1.05 clause keeps single-site states localized wherever they
    // sit (identity operator, stretched-M blocks)
    if (s.participation[k] < t.pr_loc &&
        (s.peak_J[k] >= wall.j_anderson || s.participation[k] <= 1.05))
      labels[k] = StateLabel::localized;
    else if (s.participation[k] > t.extended_fraction * below[par])
      labels[k] = StateLabel::extended;
    else
      labels[k] = StateLabel::transition;
  }
  return labels;
}

int localized_onset(const FloquetSpectrum& s, double pr_threshold) {
  int worst = -1;
  for (int k = 0; k < s.basis.size(); ++k)
    if (s.participation[k] >= pr_threshold) worst = std::max(worst, s.peak_J[k]);
  return worst + 1;
}

std::optional<int> extended_cutoff(const FloquetSpectrum& s, const std::vector<StateLabel>& labels,
                                   double support) {
  const int n = s.basis.size();
  Eigen::VectorXd cum = Eigen::VectorXd::Zero(n);
  bool any = false;
  for (int k = 0; k < n; ++k) {
    if (labels[k] != StateLabel::extended) continue;
    any = true;
    cum += s.vectors.col(k).cwiseAbs2();
  }
  if (!any) return std::nullopt;
  for (int i = n - 1; i >= 0; --i)
    if (cum[i] > support) return s.basis.J_of(i);
  return std::nullopt;
}

}  // namespace rotorsim
