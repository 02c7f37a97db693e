#include "ctrees/slalom/planner.hpp"

#include <algorithm>
#include <stdexcept>

#include "ctrees/util/csv.hpp"

namespace ctrees::slalom {

namespace {

struct BranchSet {
  std::vector<std::shared_ptr<const BranchProblem>> branches;
  std::vector<double> weights;
  std::vector<std::vector<int>> ids;  // present obstacle ids per branch
};

BranchSet build_branch_set(const Pose2& q0, const Pose2& q_prev,
                           const std::vector<ObstacleHyp>& obstacles,
                           const SlalomCostParams& params, const HorizonSpec& horizon,
                           int max_uncertain) {
  std::vector<ObstacleHyp> certain;
  std::vector<ObstacleHyp> uncertain;
  for (const auto& o : obstacles) {
    if (o.resolved == Presence::kAbsent || o.existence_prob <= 0.0) continue;
    if (o.resolved == Presence::kPresent || o.existence_prob >= 1.0) {
      certain.push_back(o);
    } else {
      uncertain.push_back(o);
    }
  }
  const int k = static_cast<int>(uncertain.size());
  if (k > max_uncertain) {
    throw std::invalid_argument("plan_slalom: too many uncertain obstacles (" +
                                std::to_string(k) + " > cap)");
  }

  std::vector<double> probs;
  probs.reserve(k);
  for (const auto& o : uncertain) probs.push_back(o.existence_prob);

  BranchSet out;
  out.weights = existence_branch_weights(probs);
  const int count = 1 << k;
  for (int mask = 0; mask < count; ++mask) {
    std::vector<ObstacleHyp> present = certain;
    for (int i = 0; i < k; ++i) {
      if (!((mask >> i) & 1)) present.push_back(uncertain[i]);
    }
    std::vector<int> ids;
    ids.reserve(present.size());
    for (const auto& o : present) ids.push_back(o.id);
    out.branches.push_back(
        build_slalom_branch(q0, q_prev, std::move(present), params, horizon,
                            out.weights[mask]));
    out.ids.push_back(std::move(ids));
  }
  return out;
}

SlalomPlan finish_plan(dal::SolveResult&& result, BranchSet&& set) {
  SlalomPlan plan;
  plan.first_pose =
      Pose2(result.tree.trunk_at(0, 0), result.tree.trunk_at(0, 1), result.tree.trunk_at(0, 2));
  plan.tree = std::move(result.tree);
  plan.report = std::move(result.report);
  plan.weights = std::move(set.weights);
  plan.branch_obstacles = std::move(set.ids);
  return plan;
}

}  // namespace

SlalomPlan plan_slalom(const Pose2& q0, const Pose2& q_prev,
                       const std::vector<ObstacleHyp>& obstacles,
                       const SlalomCostParams& params, const HorizonSpec& horizon,
                       const dal::SolverConfig& cfg, int workers, int max_uncertain) {
  BranchSet set = build_branch_set(q0, q_prev, obstacles, params, horizon, max_uncertain);
  TreeProblem problem = build_tree_problem(
      std::vector<std::shared_ptr<const BranchProblem>>(set.branches), horizon, 3);

  std::vector<Eigen::VectorXd> z_init;
  z_init.reserve(problem.num_branches());
  for (int s = 0; s < problem.num_branches(); ++s) {
    z_init.push_back(
        static_cast<const SlalomBranch&>(problem.branch(s)).straight_rollout());
  }
  Eigen::VectorXd ztilde_init = dal::update_consensus(z_init, problem.trunk_size());
  auto result = dal::solve(problem, z_init, ztilde_init, cfg, workers);
  return finish_plan(std::move(result), std::move(set));
}

SlalomPlan SlalomPlanner::plan(const Pose2& q0, const Pose2& q_prev,
                               const std::vector<ObstacleHyp>& obstacles, double now) {
  BranchSet set = build_branch_set(q0, q_prev, obstacles, params_, horizon_, max_uncertain_);
  TreeProblem problem = build_tree_problem(
      std::vector<std::shared_ptr<const BranchProblem>>(set.branches), horizon_, 3);

  const int T = horizon_.total_steps;
  int shift = 0;
  if (has_prev_) {
    shift = static_cast<int>(std::lround((now - prev_time_) / horizon_.dt));
    shift = std::clamp(shift, 0, T - 1);
  }

  const int N = problem.num_branches();
  std::vector<Eigen::VectorXd> z_init(N);
  std::vector<dal::DualState> duals;
  duals.reserve(N);
  for (int s = 0; s < N; ++s) {
    const auto& branch = static_cast<const SlalomBranch&>(problem.branch(s));
    auto d = dal::DualState::zeros(branch.num_ineq(), branch.num_eq(),
                                   problem.trunk_size());
    const auto it = cache_.find(set.ids[s]);
    if (it != cache_.end()) {
      z_init[s].resize(3 * T);
      for (int t = 0; t < T; ++t) {
        const int src = std::min(t + shift, T - 1);
        z_init[s].segment<3>(3 * t) = it->second.z.segment<3>(3 * src);
      }
      if (it->second.lambda.size() == d.lambda.size()) d.lambda = it->second.lambda;
      if (it->second.kappa.size() == d.kappa.size()) d.kappa = it->second.kappa;
    } else {
      z_init[s] = branch.straight_rollout();
    }
    duals.push_back(std::move(d));
  }
  Eigen::VectorXd ztilde_init = dal::update_consensus(z_init, problem.trunk_size());

  auto result = dal::solve(problem, z_init, ztilde_init, cfg_, workers_, &duals);

  cache_.clear();
  for (int s = 0; s < N; ++s) {
    cache_[set.ids[s]] = BranchMemory{result.tree.branch_vars[s], result.duals[s].lambda,
                                      result.duals[s].kappa};
  }
  prev_time_ = now;
  has_prev_ = true;
  return finish_plan(std::move(result), std::move(set));
}

void write_tree_csv(std::ostream& out, const ControlTree& tree) {
  CsvWriter csv({"branch", "t", "x[m]", "y[m]", "theta[rad]", "p_branch"});
  for (int t = 0; t < tree.horizon.trunk_steps; ++t) {
    csv.add_row(CsvWriter::Row()
                    .integer(-1)
                    .integer(t)
                    .num(tree.trunk_at(t, 0))
                    .num(tree.trunk_at(t, 1))
                    .num(tree.trunk_at(t, 2))
                    .num(1.0)
                    .take());
  }
  for (size_t b = 0; b < tree.branch_vars.size(); ++b) {
    for (int t = 0; t < tree.horizon.total_steps; ++t) {
      csv.add_row(CsvWriter::Row()
                      .integer(static_cast<long long>(b))
                      .integer(t)
                      .num(tree.at(static_cast<int>(b), t, 0))
                      .num(tree.at(static_cast<int>(b), t, 1))
                      .num(tree.at(static_cast<int>(b), t, 2))
                      .num(tree.weights[b])
                      .take());
    }
  }
  out << csv.to_string();
}

}  // namespace ctrees::slalom
