#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ctrees/control_tree.hpp"
#include "ctrees/problem.hpp"
#include "ctrees/solver/config.hpp"
#include "ctrees/solver/dual_state.hpp"
#include "ctrees/solver/newton.hpp"
#include "ctrees/solver/report.hpp"
#include "ctrees/solver/updates.hpp"

namespace ctrees::dal {

struct SolveResult {
  ControlTree tree;
  SolveReport report;
  std::vector<DualState> duals;  // final duals, reusable for warm starts
};

// Two-phase iteration until all four residuals pass or max_outer_iters:
//   phase 1 (one task per branch): minimize the branch Lagrangian, then the
//   AuLa dual updates from the fresh constraint values;
//   phase 2 (single owner): consensus average in fixed branch order, then
//   the ADMM dual updates.
//
// workers <= 1 runs the serial reference implementation; workers > 1 (or 0
// for all available threads) runs the OpenMP path. Both produce bit-identical
// results: phase 1 has no shared mutable state and every reduction happens
// in fixed branch order in phase 2.
//
// initial_duals, when given, seeds lambda/kappa/eta (warm starts); default is
// all zeros.
SolveResult solve(const TreeProblem& problem, const std::vector<Eigen::VectorXd>& z_init,
                  const Eigen::VectorXd& ztilde_init, const SolverConfig& cfg,
                  int workers = 1,
                  const std::vector<DualState>* initial_duals = nullptr);

// Zero initialization helpers.
std::vector<Eigen::VectorXd> zero_branch_init(const TreeProblem& problem);
Eigen::VectorXd zero_trunk_init(const TreeProblem& problem);

}  // namespace ctrees::dal
