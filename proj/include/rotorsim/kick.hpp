#pragma once
#include <vector>

#include <Eigen/Dense>

#include "rotorsim/basis.hpp"
#include "rotorsim/cos2.hpp"

namespace rotorsim {

// exp(+i P cos^2 theta) on one M block, built by diagonalizing the real
// tridiagonal cos^2 chain of each J parity separately.
class KickOperator {
 public:
  KickOperator(double P, int M, int j_max);

  const BlockBasis& basis() const { return basis_; }
  double P() const { return P_; }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& c) const;
  const Eigen::MatrixXcd& matrix() const { return U_; }
  double max_unitarity_defect() const;  // ||U^H U - I||_max

 private:
  BlockBasis basis_;
  double P_;
  Eigen::MatrixXcd U_;
};

}  // namespace rotorsim
