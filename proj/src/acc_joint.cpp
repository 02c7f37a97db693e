#include "ctrees/acc/joint.hpp"

#include <stdexcept>

namespace ctrees::acc {

Eigen::VectorXd JointQp::branch_solution(const Eigen::VectorXd& w, int s) const {
  Eigen::VectorXd z(trunk_size + tail_size);
  z.head(trunk_size) = w.head(trunk_size);
  z.tail(tail_size) = w.segment(trunk_size + s * tail_size, tail_size);
  return z;
}

JointQp assemble_joint_qp(
    const std::vector<std::shared_ptr<const QuadraticBranch>>& branches,
    const HorizonSpec& horizon, int var_dim) {
  if (branches.empty()) throw std::invalid_argument("joint qp: no branches");
  const int N = static_cast<int>(branches.size());
  const int n = horizon.total_steps * var_dim;
  const int trunk = horizon.trunk_steps * var_dim;
  const int tail = n - trunk;
  const int nw = trunk + N * tail;

  // Per-branch selection indices into w.
  const auto joint_index = [&](int s, int j) {
    return j < trunk ? j : trunk + s * tail + (j - trunk);
  };

  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(nw, nw);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(nw);
  double c0 = 0.0;
  int rows = 0;
  for (const auto& b : branches) {
    if (b->num_vars() != n) throw std::invalid_argument("joint qp: branch size mismatch");
    if (b->has_soft_rows() || b->num_eq() > 0) {
      throw std::invalid_argument("joint qp: plain quadratic branches only");
    }
    rows += b->num_ineq();
  }

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, nw);
  Eigen::VectorXd bv(rows);
  int row0 = 0;
  for (int s = 0; s < N; ++s) {
    const QuadraticBranch& b = *branches[s];
    const double w = b.weight();
    for (int i = 0; i < n; ++i) {
      const int wi = joint_index(s, i);
      f[wi] += w * b.f()[i];
      for (int j = 0; j < n; ++j) H(wi, joint_index(s, j)) += w * b.H()(i, j);
    }
    c0 += w * b.c0();
    const int m = b.num_ineq();
    for (int r = 0; r < m; ++r) {
      for (int j = 0; j < n; ++j) A(row0 + r, joint_index(s, j)) += b.A()(r, j);
    }
    bv.segment(row0, m) = b.b();
    row0 += m;
  }

  JointQp out;
  out.qp = std::make_shared<QuadraticBranch>(std::move(H), std::move(f), c0, 1.0);
  out.qp->set_inequalities(std::move(A), std::move(bv));
  out.trunk_size = trunk;
  out.tail_size = tail;
  return out;
}

}  // namespace ctrees::acc
