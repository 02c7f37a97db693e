#include "ctrees/solver/banded.hpp"

#include <algorithm>
#include <cmath>

namespace ctrees::dal {

bool BandedCholesky::factor(const Eigen::MatrixXd& A, int bw, double damping) {
  n_ = static_cast<int>(A.rows());
  bw_ = std::min(bw, n_ - 1);
  band_.setZero(bw_ + 1, n_);
  for (int j = 0; j < n_; ++j) {
    band_(0, j) = A(j, j) + damping;
    for (int i = j + 1; i <= std::min(n_ - 1, j + bw_); ++i) band_(i - j, j) = A(i, j);
  }
  for (int j = 0; j < n_; ++j) {
    for (int k = std::max(0, j - bw_); k < j; ++k) {
      const double ljk = band_(j - k, k);
      if (ljk == 0.0) continue;
      const int last = std::min(n_ - 1, k + bw_);
      for (int i = j; i <= last; ++i) band_(i - j, j) -= ljk * band_(i - k, k);
    }
    if (!(band_(0, j) > 0.0) || !std::isfinite(band_(0, j))) return false;
    band_(0, j) = std::sqrt(band_(0, j));
    const double inv = 1.0 / band_(0, j);
    for (int i = j + 1; i <= std::min(n_ - 1, j + bw_); ++i) band_(i - j, j) *= inv;
  }
  return true;
}

Eigen::VectorXd BandedCholesky::solve(const Eigen::VectorXd& rhs) const {
  Eigen::VectorXd y = rhs;
  // Forward substitution L y = rhs.
  for (int j = 0; j < n_; ++j) {
    y[j] /= band_(0, j);
    const int last = std::min(n_ - 1, j + bw_);
    for (int i = j + 1; i <= last; ++i) y[i] -= band_(i - j, j) * y[j];
  }
  // Back substitution L^T x = y.
  for (int j = n_ - 1; j >= 0; --j) {
    const int last = std::min(n_ - 1, j + bw_);
    for (int i = j + 1; i <= last; ++i) y[j] -= band_(i - j, j) * y[i];
    y[j] /= band_(0, j);
  }
  return y;
}

}  // namespace ctrees::dal
