#pragma once

#include <memory>
#include <vector>

#include "ctrees/horizon.hpp"
#include "ctrees/problem.hpp"
#include "ctrees/slalom/kinematics.hpp"
#include "ctrees/slalom/types.hpp"

namespace ctrees::slalom {

// Configuration-space branch over poses q(0..T-1) in SE(2), stacked
// (x, y, theta) per step. q0 and q_prev fix the finite-difference boundary
// (they are the poses at steps -1 and -2).
//
// cost: sum_t [ w_acc (xdd^2 + ydd^2 + thetadd^2)
//             + w_center y_t^2
//             + w_speed (|(xd, yd)| - v_desired)^2 ]
// equalities: the no-slip residual at every step;
// inequalities: clearance rows per (obstacle, step), obstacle-major.
//
// Gradients are analytic; curvature is the Gauss-Newton approximation, which
// is symmetric PSD by construction and banded (half bandwidth 3d - 1 = 8).
class SlalomBranch final : public BranchProblem {
 public:
  SlalomBranch(Pose2 q0, Pose2 q_prev, std::vector<ObstacleHyp> obstacles,
               SlalomCostParams params, HorizonSpec horizon, double weight);

  int num_vars() const override { return 3 * horizon_.total_steps; }
  double weight() const override { return weight_; }
  double cost(const Eigen::VectorXd& z, Eigen::VectorXd* grad,
              Eigen::MatrixXd* curv) const override;
  int num_ineq() const override {
    return static_cast<int>(obstacles_.size()) * horizon_.total_steps;
  }
  void ineq(const Eigen::VectorXd& z, Eigen::VectorXd& g,
            Eigen::MatrixXd* jac) const override;
  int num_eq() const override { return horizon_.total_steps; }
  void eq(const Eigen::VectorXd& z, Eigen::VectorXd& h,
          Eigen::MatrixXd* jac) const override;
  int bandwidth() const override { return 8; }

  const std::vector<ObstacleHyp>& obstacles() const { return obstacles_; }
  const Pose2& q0() const { return q0_; }

  // Straight constant-velocity rollout from the boundary poses; the usual
  // initialization heuristic.
  Eigen::VectorXd straight_rollout() const;

 private:
  Pose2 pose_at(const Eigen::VectorXd& z, int t) const;  // t in [-2, T)

  Pose2 q0_;
  Pose2 q_prev_;
  std::vector<ObstacleHyp> obstacles_;
  SlalomCostParams params_;
  HorizonSpec horizon_;
  double weight_;
};

std::shared_ptr<const SlalomBranch> build_slalom_branch(
    const Pose2& q0, const Pose2& q_prev, std::vector<ObstacleHyp> present_obstacles,
    const SlalomCostParams& params, const HorizonSpec& horizon, double weight);

// Weights of the 2^k existence combinations of k uncertain obstacles.
// Branch order: mask m = 0..2^k-1 with bit i set meaning obstacle i is
// ABSENT, so branch 0 assumes all present and the last branch none. The last
// weight is the complement of the fixed-order partial sum, so the total is
// exactly 1.
std::vector<double> existence_branch_weights(const std::vector<double>& probs);

}  // namespace ctrees::slalom
