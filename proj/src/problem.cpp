#include "ctrees/problem.hpp"

#include <stdexcept>

namespace ctrees {

QuadraticBranch::QuadraticBranch(Eigen::MatrixXd H, Eigen::VectorXd f, double c0,
                                 double weight)
    : H_(std::move(H)), f_(std::move(f)), c0_(c0), weight_(weight) {
  if (H_.rows() != H_.cols() || H_.rows() != f_.size()) {
    throw std::invalid_argument("QuadraticBranch: H/f dimension mismatch");
  }
  A_.resize(0, H_.rows());
  C_.resize(0, H_.rows());
  A_soft_.resize(0, H_.rows());
}

void QuadraticBranch::set_inequalities(Eigen::MatrixXd A, Eigen::VectorXd b) {
  if (A.rows() != b.size() || (A.rows() > 0 && A.cols() != H_.rows())) {
    throw std::invalid_argument("QuadraticBranch: inequality dimension mismatch");
  }
  A_ = std::move(A);
  b_ = std::move(b);
}

void QuadraticBranch::set_equalities(Eigen::MatrixXd C, Eigen::VectorXd d) {
  if (C.rows() != d.size() || (C.rows() > 0 && C.cols() != H_.rows())) {
    throw std::invalid_argument("QuadraticBranch: equality dimension mismatch");
  }
  C_ = std::move(C);
  d_ = std::move(d);
}

void QuadraticBranch::set_soft_inequalities(Eigen::MatrixXd A, Eigen::VectorXd b,
                                            double weight) {
  if (A.rows() != b.size() || (A.rows() > 0 && A.cols() != H_.rows())) {
    throw std::invalid_argument("QuadraticBranch: soft row dimension mismatch");
  }
  A_soft_ = std::move(A);
  b_soft_ = std::move(b);
  soft_weight_ = weight;
}

double QuadraticBranch::cost(const Eigen::VectorXd& z, Eigen::VectorXd* grad,
                             Eigen::MatrixXd* curv) const {
  double value = 0.5 * z.dot(H_ * z) + f_.dot(z) + c0_;
  if (grad) *grad = H_ * z + f_;
  if (curv) *curv = H_;
  if (A_soft_.rows() > 0) {
    const Eigen::VectorXd r = A_soft_ * z - b_soft_;
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      if (r[i] > 0.0) {
        value += soft_weight_ * r[i] * r[i];
        if (grad) *grad += 2.0 * soft_weight_ * r[i] * A_soft_.row(i).transpose();
        if (curv) {
          curv->noalias() +=
              2.0 * soft_weight_ * A_soft_.row(i).transpose() * A_soft_.row(i);
        }
      }
    }
  }
  return value;
}

void QuadraticBranch::ineq(const Eigen::VectorXd& z, Eigen::VectorXd& g,
                           Eigen::MatrixXd* jac) const {
  g = A_ * z - b_;
  if (jac) *jac = A_;
}

void QuadraticBranch::eq(const Eigen::VectorXd& z, Eigen::VectorXd& h,
                         Eigen::MatrixXd* jac) const {
  h = C_ * z - d_;
  if (jac) *jac = C_;
}

TreeProblem::TreeProblem(std::vector<std::shared_ptr<const BranchProblem>> branches,
                         HorizonSpec horizon, int var_dim)
    : branches_(std::move(branches)), horizon_(horizon), var_dim_(var_dim) {
  if (branches_.empty()) {
    throw std::invalid_argument("TreeProblem: at least one branch required");
  }
  if (var_dim_ < 1) {
    throw std::invalid_argument("TreeProblem: var_dim must be positive");
  }
  const int n = horizon_.total_steps * var_dim_;
  std::vector<double> w;
  w.reserve(branches_.size());
  for (const auto& b : branches_) {
    if (!b) throw std::invalid_argument("TreeProblem: null branch");
    if (b->num_vars() != n) {
      throw std::invalid_argument("TreeProblem: branch variable count mismatch");
    }
    w.push_back(b->weight());
  }
  validate_belief(std::move(w));  // weights must form a distribution
}

std::vector<double> TreeProblem::weights() const {
  std::vector<double> w;
  w.reserve(branches_.size());
  for (const auto& b : branches_) w.push_back(b->weight());
  return w;
}

TreeProblem build_tree_problem(std::vector<std::shared_ptr<const BranchProblem>> branches,
                               const HorizonSpec& horizon, int var_dim) {
  return TreeProblem(std::move(branches), horizon, var_dim);
}

}  // namespace ctrees
