#include "ctrees/solver/solve.hpp"

#include <omp.h>

#include <chrono>
#include <stdexcept>

namespace ctrees::dal {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double inf_norm_pos(const Eigen::VectorXd& v) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max(m, v[i]);
  return m;
}

struct BranchScratch {
  NewtonResult newton;
  Eigen::VectorXd g_val;
  Eigen::VectorXd h_val;
};

}  // namespace

std::vector<Eigen::VectorXd> zero_branch_init(const TreeProblem& problem) {
  return std::vector<Eigen::VectorXd>(
      problem.num_branches(), Eigen::VectorXd::Zero(problem.vars_per_branch()));
}

Eigen::VectorXd zero_trunk_init(const TreeProblem& problem) {
  return Eigen::VectorXd::Zero(problem.trunk_size());
}

SolveResult solve(const TreeProblem& problem, const std::vector<Eigen::VectorXd>& z_init,
                  const Eigen::VectorXd& ztilde_init, const SolverConfig& cfg,
                  int workers, const std::vector<DualState>* initial_duals) {
  cfg.validate();
  const int N = problem.num_branches();
  const int n = problem.vars_per_branch();
  const int trunk = problem.trunk_size();

  if (static_cast<int>(z_init.size()) != N) {
    throw std::invalid_argument("solve: z_init branch count mismatch");
  }
  for (const auto& z : z_init) {
    if (z.size() != n) throw std::invalid_argument("solve: z_init size mismatch");
    if (!z.allFinite()) throw std::invalid_argument("solve: z_init must be finite");
  }
  if (ztilde_init.size() != trunk) {
    throw std::invalid_argument("solve: ztilde_init size mismatch");
  }

  std::vector<Eigen::VectorXd> z = z_init;
  Eigen::VectorXd ztilde = ztilde_init;
  std::vector<DualState> duals;
  if (initial_duals) {
    if (static_cast<int>(initial_duals->size()) != N) {
      throw std::invalid_argument("solve: initial_duals branch count mismatch");
    }
    duals = *initial_duals;
    for (int s = 0; s < N; ++s) {
      if (duals[s].lambda.size() != problem.branch(s).num_ineq() ||
          duals[s].kappa.size() != problem.branch(s).num_eq() ||
          duals[s].eta.size() != trunk) {
        throw std::invalid_argument("solve: initial_duals shape mismatch");
      }
    }
  } else {
    duals.reserve(N);
    for (int s = 0; s < N; ++s) {
      duals.push_back(
          DualState::zeros(problem.branch(s).num_ineq(), problem.branch(s).num_eq(), trunk));
    }
  }

  const std::vector<double> weights = problem.weights();
  const std::vector<double>* consensus_weights =
      cfg.weighted_consensus ? &weights : nullptr;

  const int max_threads = omp_get_max_threads();
  const int nthreads =
      workers <= 0 ? max_threads : std::min(workers, std::max(1, max_threads));

  SolveReport report;
  report.history.reserve(cfg.max_outer_iters);

  std::vector<BranchScratch> scratch(N);
  std::vector<Eigen::VectorXd> z_new(N);

  for (int k = 0; k < cfg.max_outer_iters; ++k) {
    const auto t1 = Clock::now();

    // Phase 1: per-branch relaxed minimization plus AuLa dual updates.
    // Each task touches only its own slots; results cannot depend on the
    // thread count.
    auto run_branch = [&](int s) {
      BranchScratch& sc = scratch[s];
      sc.newton = solve_branch_subproblem(problem.branch(s), z[s], ztilde, duals[s], cfg);
      z_new[s] = sc.newton.z;
      problem.branch(s).ineq(z_new[s], sc.g_val, nullptr);
      problem.branch(s).eq(z_new[s], sc.h_val, nullptr);
      duals[s].lambda = update_inequality_duals(duals[s].lambda, sc.g_val, cfg.mu);
      duals[s].kappa = update_equality_duals(duals[s].kappa, sc.h_val, cfg.nu);
    };

    if (nthreads <= 1 || N == 1) {
      for (int s = 0; s < N; ++s) run_branch(s);  // serial reference path
    } else {
#pragma omp parallel for schedule(static) num_threads(nthreads)
      for (int s = 0; s < N; ++s) run_branch(s);
    }

    IterationStats stats;
    stats.phase1_ms = ms_since(t1);

    // Phase 2: consensus average and ADMM dual update, single owner.
    const auto t2 = Clock::now();
    const Eigen::VectorXd ztilde_new = update_consensus(z_new, trunk, consensus_weights);
    for (int s = 0; s < N; ++s) {
      duals[s].eta =
          update_consensus_duals(duals[s].eta, z_new[s].head(trunk), ztilde_new, cfg.rho);
    }
    stats.phase2_ms = ms_since(t2);

    for (int s = 0; s < N; ++s) {
      stats.aula_pri = std::max(stats.aula_pri, inf_norm_pos(scratch[s].g_val));
      if (scratch[s].h_val.size() > 0) {
        stats.aula_pri =
            std::max(stats.aula_pri, scratch[s].h_val.lpNorm<Eigen::Infinity>());
      }
      stats.aula_dual =
          std::max(stats.aula_dual, (z_new[s] - z[s]).lpNorm<Eigen::Infinity>());
      stats.admm_pri = std::max(
          stats.admm_pri, (z_new[s].head(trunk) - ztilde_new).lpNorm<Eigen::Infinity>());
      stats.newton_iters += scratch[s].newton.iterations;
      stats.cost_evals += scratch[s].newton.evals;
    }
    stats.admm_dual = (ztilde_new - ztilde).lpNorm<Eigen::Infinity>();

    for (int s = 0; s < N; ++s) z[s] = z_new[s];
    ztilde = ztilde_new;

    report.history.push_back(stats);
    report.iterations = k + 1;
    report.phase1_ms_total += stats.phase1_ms;
    report.phase2_ms_total += stats.phase2_ms;
    report.newton_iters_total += stats.newton_iters;
    report.cost_evals_total += stats.cost_evals;

    if (check_termination(stats, cfg)) {
      report.converged = true;
      break;
    }
  }

  SolveResult result;
  result.tree = ControlTree{problem.horizon(), problem.var_dim(), std::move(z), weights,
                            std::move(ztilde)};
  result.report = std::move(report);
  result.duals = std::move(duals);
  return result;
}

}  // namespace ctrees::dal
