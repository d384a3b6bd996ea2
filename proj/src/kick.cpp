#include "rotorsim/kick.hpp"

#include <complex>

namespace rotorsim {

KickOperator::KickOperator(double P, int M, int j_max) : basis_(M, j_max), P_(P) {
  if (P < 0.0) throw ConfigError("kick strength P must be >= 0");
  const int n = basis_.size();
  if (P == 0.0) {  // exactly the identity, not V V^T with rounding noise
    U_ = Eigen::MatrixXcd::Identity(n, n);
    return;
  }
  const Cos2Matrix c2 = cos2_matrix(M, j_max);
  U_ = Eigen::MatrixXcd::Zero(n, n);

  for (int par = 0; par < 2; ++par) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (basis_.J_of(i) % 2 == par) idx.push_back(i);
    const int m = static_cast<int>(idx.size());
    if (m == 0) continue;

    Eigen::VectorXd d(m), sub(std::max(m - 1, 0));
    for (int k = 0; k < m; ++k) d[k] = c2.diag[idx[k]];
    for (int k = 0; k + 1 < m; ++k) sub[k] = c2.off2[idx[k]];

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, sub);
    if (es.info() != Eigen::Success)
      throw NumericalQualityError("tridiagonal eigensolver failed (M=" + std::to_string(M) + ")");
    const Eigen::MatrixXd& V = es.eigenvectors();
    const Eigen::VectorXd& w = es.eigenvalues();

    Eigen::VectorXcd ph(m);
    for (int k = 0; k < m; ++k)
      ph[k] = std::complex<double>(std::cos(P * w[k]), std::sin(P * w[k]));
    // U_chain = V diag(e^{iPw}) V^T, assembled in real/imag parts
    Eigen::MatrixXd re = V * ph.real().asDiagonal() * V.transpose();
    Eigen::MatrixXd im = V * ph.imag().asDiagonal() * V.transpose();
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) U_(idx[a], idx[b]) = std::complex<double>(re(a, b), im(a, b));
  }
}

Eigen::VectorXcd KickOperator::apply(const Eigen::VectorXcd& c) const {
  return U_ * c;
}

double KickOperator::max_unitarity_defect() const {
  const int n = basis_.size();
  Eigen::MatrixXcd d = U_.adjoint() * U_ - Eigen::MatrixXcd::Identity(n, n);
  return d.cwiseAbs().maxCoeff();
}

}  // namespace rotorsim
