#pragma once

#include <Eigen/Core>

#include "ctrees/solver/lagrangian.hpp"

namespace ctrees::dal {

struct NewtonResult {
  Eigen::VectorXd z;
  bool converged = false;
  int iterations = 0;
  long evals = 0;          // objective evaluations (full + line-search trials)
  double grad_norm = 0.0;  // infinity norm at the returned point
};

// Minimizes the branch Lagrangian from z_init by damped Newton with
// backtracking line search. Uses the banded Cholesky kernel when the branch
// advertises a bandwidth, a dense factorization otherwise. Deterministic for
// identical inputs. Exhausting max_inner_iters returns the best iterate with
// converged=false; non-finite values at an accepted iterate raise
// EvaluationError.
NewtonResult solve_branch_subproblem(const BranchProblem& branch,
                                     const Eigen::VectorXd& z_init,
                                     const Eigen::VectorXd& ztilde,
                                     const DualState& duals, const SolverConfig& cfg);

}  // namespace ctrees::dal
