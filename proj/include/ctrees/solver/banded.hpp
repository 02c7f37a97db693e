#pragma once

#include <Eigen/Core>

namespace ctrees::dal {

// Cholesky factorization of a symmetric positive-definite matrix with half
// bandwidth bw (entries vanish for |i-j| > bw). Storage is the lower band:
// band_(i-j, j) holds A(i,j). Factor and solve cost O(n*bw^2) and O(n*bw).
//
// Trajectory curvatures from K-order transcriptions are banded with
// bw <= (K+1)*d - 1; the Newton step uses this instead of a dense solve
// when the problem advertises a bandwidth.
class BandedCholesky {
 public:
  // Factors A + damping*I reading only the band. Returns false when a
  // non-positive pivot is met (matrix not positive definite at this damping).
  bool factor(const Eigen::MatrixXd& A, int bw, double damping);

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

  int size() const { return n_; }
  int bandwidth() const { return bw_; }

 private:
  Eigen::MatrixXd band_;  // (bw+1) x n, band_(r, j) = L(j+r, j)
  int n_ = 0;
  int bw_ = 0;
};

}  // namespace ctrees::dal
