#pragma once

#include <Eigen/Core>
#include <stdexcept>

#include "ctrees/problem.hpp"
#include "ctrees/solver/config.hpp"
#include "ctrees/solver/dual_state.hpp"

namespace ctrees::dal {

// Raised when a cost or constraint evaluates to a non-finite value at the
// current iterate.
struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LagrangianEval {
  double value = 0.0;
  Eigen::VectorXd gradient;   // size T*d
  Eigen::MatrixXd curvature;  // T*d x T*d, symmetric PSD (+ consensus diagonal)
};

// Relaxed per-branch objective:
//
//   w_eff * c(z)
//   + lambda' g(z) + mu * sum_{i in Act} g_i(z)^2
//   + kappa' h(z) + nu * |h(z)|^2
//   + eta' dz + (rho/2) |dz|^2,  dz = z_trunk - ztilde
//
// with w_eff = max(weight, cfg.weight_floor). The activation set Act is
// {i : g_i > 0 or lambda_i > 0}; with cfg.literal_indicator only {i : g_i > 0}.
double branch_lagrangian_value(const BranchProblem& branch, const Eigen::VectorXd& z,
                               const Eigen::VectorXd& ztilde, const DualState& duals,
                               const SolverConfig& cfg);

// Full evaluation: value, gradient and PSD curvature (Gauss-Newton for the
// constraint penalties, the branch's own curvature for the cost).
LagrangianEval branch_lagrangian(const BranchProblem& branch, const Eigen::VectorXd& z,
                                 const Eigen::VectorXd& ztilde, const DualState& duals,
                                 const SolverConfig& cfg);

}  // namespace ctrees::dal
