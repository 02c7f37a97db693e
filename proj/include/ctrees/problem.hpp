#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "ctrees/belief.hpp"
#include "ctrees/horizon.hpp"

namespace ctrees {

// One branch of the tree problem: probability weight, smooth cost c(z),
// inequalities g(z) <= 0 and equalities h(z) = 0 over the stacked variable
// sequence z in R^{T*d} (step t occupies entries [t*d, (t+1)*d)).
//
// cost() must fill, when requested, the gradient and a symmetric
// positive-semidefinite curvature approximation (exact or Gauss-Newton).
class BranchProblem {
 public:
  virtual ~BranchProblem() = default;

  virtual int num_vars() const = 0;
  virtual double weight() const = 0;

  virtual double cost(const Eigen::VectorXd& z, Eigen::VectorXd* grad,
                      Eigen::MatrixXd* curv) const = 0;

  virtual int num_ineq() const = 0;
  virtual void ineq(const Eigen::VectorXd& z, Eigen::VectorXd& g,
                    Eigen::MatrixXd* jac) const = 0;

  virtual int num_eq() const = 0;
  virtual void eq(const Eigen::VectorXd& z, Eigen::VectorXd& h,
                  Eigen::MatrixXd* jac) const = 0;

  // Half bandwidth of the curvature (|i-j| > bandwidth implies curv(i,j)=0),
  // or -1 when the curvature is dense.
  virtual int bandwidth() const { return -1; }
};

// Quadratic cost 0.5 z'Hz + f'z + c0 with linear constraints
// A z - b <= 0 and C z - d = 0, plus optional one-sided soft rows
// soft_weight * sum_i max(0, As z - bs)_i^2 folded into the cost.
class QuadraticBranch final : public BranchProblem {
 public:
  QuadraticBranch(Eigen::MatrixXd H, Eigen::VectorXd f, double c0, double weight);

  void set_inequalities(Eigen::MatrixXd A, Eigen::VectorXd b);
  void set_equalities(Eigen::MatrixXd C, Eigen::VectorXd d);
  void set_soft_inequalities(Eigen::MatrixXd A, Eigen::VectorXd b, double weight);

  int num_vars() const override { return static_cast<int>(H_.rows()); }
  double weight() const override { return weight_; }
  double cost(const Eigen::VectorXd& z, Eigen::VectorXd* grad,
              Eigen::MatrixXd* curv) const override;
  int num_ineq() const override { return static_cast<int>(A_.rows()); }
  void ineq(const Eigen::VectorXd& z, Eigen::VectorXd& g,
            Eigen::MatrixXd* jac) const override;
  int num_eq() const override { return static_cast<int>(C_.rows()); }
  void eq(const Eigen::VectorXd& z, Eigen::VectorXd& h,
          Eigen::MatrixXd* jac) const override;

  const Eigen::MatrixXd& H() const { return H_; }
  const Eigen::VectorXd& f() const { return f_; }
  double c0() const { return c0_; }
  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::VectorXd& b() const { return b_; }
  const Eigen::MatrixXd& C() const { return C_; }
  const Eigen::VectorXd& d() const { return d_; }
  bool has_soft_rows() const { return A_soft_.rows() > 0; }
  const Eigen::MatrixXd& soft_A() const { return A_soft_; }
  const Eigen::VectorXd& soft_b() const { return b_soft_; }

 private:
  Eigen::MatrixXd H_;
  Eigen::VectorXd f_;
  double c0_;
  double weight_;
  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  Eigen::MatrixXd C_;
  Eigen::VectorXd d_;
  Eigen::MatrixXd A_soft_;
  Eigen::VectorXd b_soft_;
  double soft_weight_ = 0.0;
};

// The whole branched problem: one BranchProblem per discrete state, in
// state order (preserved everywhere), plus the shared horizon.
class TreeProblem {
 public:
  TreeProblem(std::vector<std::shared_ptr<const BranchProblem>> branches,
              HorizonSpec horizon, int var_dim);

  int num_branches() const { return static_cast<int>(branches_.size()); }
  const BranchProblem& branch(int s) const { return *branches_[s]; }
  std::shared_ptr<const BranchProblem> branch_ptr(int s) const { return branches_[s]; }
  const HorizonSpec& horizon() const { return horizon_; }
  int var_dim() const { return var_dim_; }
  int vars_per_branch() const { return horizon_.total_steps * var_dim_; }
  int trunk_size() const { return horizon_.trunk_steps * var_dim_; }
  std::vector<double> weights() const;

 private:
  std::vector<std::shared_ptr<const BranchProblem>> branches_;
  HorizonSpec horizon_;
  int var_dim_;
};

// Validates weights (they must form a belief) and dimension consistency.
TreeProblem build_tree_problem(std::vector<std::shared_ptr<const BranchProblem>> branches,
                               const HorizonSpec& horizon, int var_dim);

}  // namespace ctrees
