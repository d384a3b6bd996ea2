#pragma once
#include <cmath>
#include <cstdlib>

#include <Eigen/Dense>

#include "rotorsim/errors.hpp"

namespace rotorsim {

// One fixed-M block, J = |M| .. j_max.
struct BlockBasis {
  int M = 0;
  int j_max = 0;

  BlockBasis() = default;
  BlockBasis(int M_, int j_max_) : M(M_), j_max(j_max_) {
    if (j_max < std::abs(M) + 4)
      throw InvalidBasisError("j_max=" + std::to_string(j_max) + " too small for |M|=" +
                              std::to_string(std::abs(M)) + " (need |M|+4)");
  }

  int jmin() const { return std::abs(M); }
  int size() const { return j_max - jmin() + 1; }
  int index_of(int J) const { return J - jmin(); }
  int J_of(int i) const { return jmin() + i; }
};

struct RotorBlockState {
  BlockBasis basis;
  Eigen::VectorXcd c;

  static RotorBlockState pure(const BlockBasis& b, int J0) {
    if (J0 < b.jmin() || J0 > b.j_max)
      throw InvalidBasisError("initial J0=" + std::to_string(J0) + " outside block");
    RotorBlockState s;
    s.basis = b;
    s.c = Eigen::VectorXcd::Zero(b.size());
    s.c[b.index_of(J0)] = 1.0;
    return s;
  }

  double norm2() const { return c.squaredNorm(); }
};

// Default truncation rule; the leak check in dynamics makes it self-validating.
inline int auto_j_max(double j_anderson_or_zero, int J0, int N, double P) {
  double r = std::max({2.0 * j_anderson_or_zero,
                       J0 + 4.0 * N * std::sqrt(std::max(P, 0.0)), 80.0});
  return static_cast<int>(std::ceil(r));
}

}  // namespace rotorsim
