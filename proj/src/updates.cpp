#include "ctrees/solver/updates.hpp"

#include <stdexcept>

namespace ctrees::dal {

Eigen::VectorXd update_inequality_duals(const Eigen::VectorXd& lambda,
                                        const Eigen::VectorXd& g_val, double mu) {
  return (lambda + 2.0 * mu * g_val).cwiseMax(0.0);
}

Eigen::VectorXd update_equality_duals(const Eigen::VectorXd& kappa,
                                      const Eigen::VectorXd& h_val, double nu) {
  return kappa + 2.0 * nu * h_val;
}

Eigen::VectorXd update_consensus(const std::vector<Eigen::VectorXd>& branch_vars,
                                 int trunk_size, const std::vector<double>* weights) {
  if (branch_vars.empty()) {
    throw std::invalid_argument("update_consensus: empty branch list");
  }
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(trunk_size);
  if (!weights) {
    for (const auto& z : branch_vars) sum += z.head(trunk_size);
    return sum / static_cast<double>(branch_vars.size());
  }
  double total = 0.0;
  for (size_t s = 0; s < branch_vars.size(); ++s) {
    sum += (*weights)[s] * branch_vars[s].head(trunk_size);
    total += (*weights)[s];
  }
  return sum / total;
}

Eigen::VectorXd update_consensus_duals(const Eigen::VectorXd& eta,
                                       const Eigen::VectorXd& z_trunk,
                                       const Eigen::VectorXd& ztilde, double rho) {
  return eta + rho * (z_trunk - ztilde);
}

bool check_termination(const IterationStats& stats, const SolverConfig& cfg) {
  return stats.aula_pri <= cfg.eps_pri && stats.aula_dual <= cfg.eps_dual &&
         stats.admm_pri <= cfg.xi_pri && stats.admm_dual <= cfg.xi_dual;
}

}  // namespace ctrees::dal
