#pragma once

#include <Eigen/Core>
#include <vector>

#include "ctrees/solver/config.hpp"
#include "ctrees/solver/report.hpp"

namespace ctrees::dal {

// lambda <- max(0, lambda + 2 mu g)
Eigen::VectorXd update_inequality_duals(const Eigen::VectorXd& lambda,
                                        const Eigen::VectorXd& g_val, double mu);

// kappa <- kappa + 2 nu h
Eigen::VectorXd update_equality_duals(const Eigen::VectorXd& kappa,
                                      const Eigen::VectorXd& h_val, double nu);

// Consensus trunk: unweighted mean of branch trunks, accumulated in branch
// order so the floating-point result is independent of the worker count.
// With weights given (experimental), a normalized weighted mean instead.
Eigen::VectorXd update_consensus(const std::vector<Eigen::VectorXd>& branch_vars,
                                 int trunk_size,
                                 const std::vector<double>* weights = nullptr);

// eta <- eta + rho (z_trunk - ztilde)
Eigen::VectorXd update_consensus_duals(const Eigen::VectorXd& eta,
                                       const Eigen::VectorXd& z_trunk,
                                       const Eigen::VectorXd& ztilde, double rho);

// All four residual tests, every branch folded in already (the stats carry
// maxima over branches). Inequality residuals use positive parts only.
bool check_termination(const IterationStats& stats, const SolverConfig& cfg);

}  // namespace ctrees::dal
