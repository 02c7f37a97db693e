#pragma once

#include <memory>
#include <vector>

#include "ctrees/horizon.hpp"
#include "ctrees/problem.hpp"

namespace ctrees::acc {

// Undecomposed form of a tree of quadratic branches: the non-anticipativity
// constraint is eliminated by substitution, leaving one joint QP over
// w = [trunk (L*d); tail_1; ...; tail_N] with branch s reading
// z_s = [w_trunk; tail_s]. Costs are belief-weighted and summed; inequality
// rows are stacked in branch order. Solving this is the single-KKT-system
// baseline the decomposed solver is benchmarked against.
struct JointQp {
  std::shared_ptr<QuadraticBranch> qp;
  int trunk_size = 0;
  int tail_size = 0;

  // Extracts branch s's full variable sequence from a joint solution.
  Eigen::VectorXd branch_solution(const Eigen::VectorXd& w, int s) const;
};

JointQp assemble_joint_qp(const std::vector<std::shared_ptr<const QuadraticBranch>>& branches,
                          const HorizonSpec& horizon, int var_dim);

}  // namespace ctrees::acc
