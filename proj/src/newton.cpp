#include "ctrees/solver/newton.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "ctrees/solver/banded.hpp"

namespace ctrees::dal {

namespace {

// Solves (H + damping I) p = -grad, escalating the damping until the
// factorization succeeds. Returns the step and the damping that worked.
Eigen::VectorXd newton_step(const Eigen::MatrixXd& H, const Eigen::VectorXd& grad,
                            int bandwidth, double& damping) {
  while (true) {
    if (bandwidth >= 0) {
      BandedCholesky chol;
      if (chol.factor(H, bandwidth, damping)) return chol.solve(-grad);
    } else {
      Eigen::MatrixXd Hd = H;
      Hd.diagonal().array() += damping;
      Eigen::LLT<Eigen::MatrixXd> llt(Hd);
      if (llt.info() == Eigen::Success) return llt.solve(-grad);
    }
    damping *= 10.0;
    if (damping > 1e12) {
      throw EvaluationError("newton: curvature factorization failed at maximal damping");
    }
  }
}

}  // namespace

NewtonResult solve_branch_subproblem(const BranchProblem& branch,
                                     const Eigen::VectorXd& z_init,
                                     const Eigen::VectorXd& ztilde,
                                     const DualState& duals, const SolverConfig& cfg) {
  const NewtonConfig& ncfg = cfg.newton;
  NewtonResult res;
  res.z = z_init;

  LagrangianEval eval = branch_lagrangian(branch, res.z, ztilde, duals, cfg);
  ++res.evals;
  double damping = ncfg.damping_floor;

  for (int it = 0; it < ncfg.max_inner_iters; ++it) {
    res.grad_norm = eval.gradient.lpNorm<Eigen::Infinity>();
    if (res.grad_norm <= ncfg.grad_tol) {
      res.converged = true;
      return res;
    }

    double step_damping = damping;
    Eigen::VectorXd p = newton_step(eval.curvature, eval.gradient, branch.bandwidth(),
                                    step_damping);
    double slope = eval.gradient.dot(p);
    if (!(slope < 0.0)) {
      // Not a descent direction (near-singular curvature); re-solve stiffer.
      step_damping = std::max(step_damping * 100.0, 1e-6);
      p = newton_step(eval.curvature, eval.gradient, branch.bandwidth(), step_damping);
      slope = eval.gradient.dot(p);
      if (!(slope < 0.0)) break;
    }

    double alpha = 1.0;
    bool accepted = false;
    double f_trial = 0.0;
    while (alpha >= 1e-12) {
      f_trial = branch_lagrangian_value(branch, res.z + alpha * p, ztilde, duals, cfg);
      ++res.evals;
      if (std::isfinite(f_trial) &&
          f_trial <= eval.value + ncfg.sufficient_decrease * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= ncfg.backtrack_factor;
    }

    if (!accepted) {
      damping = std::max(damping * 100.0, 1e-4);
      if (damping > 1e10) break;  // stalled; return best-so-far
      continue;
    }

    res.z += alpha * p;
    ++res.iterations;
    damping = ncfg.damping_floor;
    eval = branch_lagrangian(branch, res.z, ztilde, duals, cfg);
    ++res.evals;
  }

  res.grad_norm = eval.gradient.lpNorm<Eigen::Infinity>();
  res.converged = res.grad_norm <= ncfg.grad_tol;
  return res;
}

}  // namespace ctrees::dal
