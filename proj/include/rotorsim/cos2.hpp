#pragma once
#include <cmath>

#include <Eigen/Dense>

#include "rotorsim/basis.hpp"

namespace rotorsim {

// cos^2(theta) in the |J,M> basis: band matrix, Delta J = 0, +-2 only.
struct Cos2Matrix {
  BlockBasis basis;
  Eigen::VectorXd diag;   // <J,M|cos2|J,M>,   J = jmin..j_max
  Eigen::VectorXd off2;   // <J+2,M|cos2|J,M>, J = jmin..j_max-2
};

inline double cos2_diag_element(int J, int M) {
  const double num = static_cast<double>(J) * (J + 1) - 3.0 * M * M;
  const double den = (2.0 * J - 1.0) * (2.0 * J + 3.0);
  return 1.0 / 3.0 + (2.0 / 3.0) * (J == 0 ? 0.0 : num / den);
}

inline double cos2_offdiag2_element(int J, int M) {
  const double a = (static_cast<double>(J) + 1) * (J + 1) - static_cast<double>(M) * M;
  const double b = (static_cast<double>(J) + 2) * (J + 2) - static_cast<double>(M) * M;
  const double den = (2.0 * J + 1.0) * (2.0 * J + 3.0) * (2.0 * J + 3.0) * (2.0 * J + 5.0);
  return std::sqrt(a * b / den);
}

inline Cos2Matrix cos2_matrix(int M, int j_max) {
  Cos2Matrix m;
  m.basis = BlockBasis(M, j_max);
  const int n = m.basis.size();
  m.diag.resize(n);
  m.off2.resize(n - 2);
  for (int i = 0; i < n; ++i) m.diag[i] = cos2_diag_element(m.basis.J_of(i), M);
  for (int i = 0; i + 2 < n; ++i) m.off2[i] = cos2_offdiag2_element(m.basis.J_of(i), M);
  return m;
}

inline double alignment_expectation(const Cos2Matrix& m, const Eigen::VectorXcd& c) {
  const int n = static_cast<int>(c.size());
  double a = 0.0;
  for (int i = 0; i < n; ++i) a += m.diag[i] * std::norm(c[i]);
  for (int i = 0; i + 2 < n; ++i)
    a += 2.0 * m.off2[i] * (std::conj(c[i]) * c[i + 2]).real();
  return a;
}

}  // namespace rotorsim
