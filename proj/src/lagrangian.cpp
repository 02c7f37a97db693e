#include "ctrees/solver/lagrangian.hpp"

#include <cmath>
#include <vector>

namespace ctrees::dal {

namespace {

double effective_weight(const BranchProblem& branch, const SolverConfig& cfg) {
  return std::max(branch.weight(), cfg.weight_floor);
}

}  // namespace

double branch_lagrangian_value(const BranchProblem& branch, const Eigen::VectorXd& z,
                               const Eigen::VectorXd& ztilde, const DualState& duals,
                               const SolverConfig& cfg) {
  double value = effective_weight(branch, cfg) * branch.cost(z, nullptr, nullptr);

  if (branch.num_ineq() > 0) {
    Eigen::VectorXd g;
    branch.ineq(z, g, nullptr);
    value += duals.lambda.dot(g);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      const bool active =
          cfg.literal_indicator ? (g[i] > 0.0) : (g[i] > 0.0 || duals.lambda[i] > 0.0);
      if (active) value += cfg.mu * g[i] * g[i];
    }
  }
  if (branch.num_eq() > 0) {
    Eigen::VectorXd h;
    branch.eq(z, h, nullptr);
    value += duals.kappa.dot(h) + cfg.nu * h.squaredNorm();
  }
  const Eigen::Index trunk = duals.eta.size();
  if (trunk > 0) {
    const Eigen::VectorXd dz = z.head(trunk) - ztilde;
    value += duals.eta.dot(dz) + 0.5 * cfg.rho * dz.squaredNorm();
  }
  return value;
}

LagrangianEval branch_lagrangian(const BranchProblem& branch, const Eigen::VectorXd& z,
                                 const Eigen::VectorXd& ztilde, const DualState& duals,
                                 const SolverConfig& cfg) {
  const Eigen::Index n = z.size();
  LagrangianEval out;
  Eigen::VectorXd grad(n);
  Eigen::MatrixXd curv(n, n);

  const double w = effective_weight(branch, cfg);
  out.value = w * branch.cost(z, &grad, &curv);
  out.gradient = w * grad;
  out.curvature = w * curv;

  if (branch.num_ineq() > 0) {
    Eigen::VectorXd g;
    Eigen::MatrixXd Jg;
    branch.ineq(z, g, &Jg);
    out.value += duals.lambda.dot(g);
    out.gradient.noalias() += Jg.transpose() * duals.lambda;
    std::vector<Eigen::Index> active;
    active.reserve(g.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      const bool on =
          cfg.literal_indicator ? (g[i] > 0.0) : (g[i] > 0.0 || duals.lambda[i] > 0.0);
      if (!on) continue;
      active.push_back(i);
      out.value += cfg.mu * g[i] * g[i];
      out.gradient.noalias() += (2.0 * cfg.mu * g[i]) * Jg.row(i).transpose();
    }
    if (!active.empty()) {
      // One GEMM for the Gauss-Newton block instead of per-row outer products.
      Eigen::MatrixXd J_act(active.size(), n);
      for (size_t r = 0; r < active.size(); ++r) J_act.row(r) = Jg.row(active[r]);
      out.curvature.noalias() += (2.0 * cfg.mu) * J_act.transpose() * J_act;
    }
  }

  if (branch.num_eq() > 0) {
    Eigen::VectorXd h;
    Eigen::MatrixXd Jh;
    branch.eq(z, h, &Jh);
    out.value += duals.kappa.dot(h) + cfg.nu * h.squaredNorm();
    out.gradient.noalias() += Jh.transpose() * (duals.kappa + 2.0 * cfg.nu * h);
    out.curvature.noalias() += (2.0 * cfg.nu) * Jh.transpose() * Jh;
  }

  const Eigen::Index trunk = duals.eta.size();
  if (trunk > 0) {
    const Eigen::VectorXd dz = z.head(trunk) - ztilde;
    out.value += duals.eta.dot(dz) + 0.5 * cfg.rho * dz.squaredNorm();
    out.gradient.head(trunk) += duals.eta + cfg.rho * dz;
    out.curvature.diagonal().head(trunk).array() += cfg.rho;
  }

  if (!std::isfinite(out.value)) {
    throw EvaluationError("branch Lagrangian evaluated to a non-finite value");
  }
  return out;
}

}  // namespace ctrees::dal
