#include "ctrees/acc/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ctrees/util/csv.hpp"

namespace ctrees::acc {

namespace {

void validate_pedestrians(const CarState& state0,
                          const std::vector<PedestrianObs>& pedestrians) {
  double prev = -std::numeric_limits<double>::infinity();
  for (const auto& p : pedestrians) {
    if (p.position <= state0.x) {
      throw std::invalid_argument("plan_acc: pedestrian behind the vehicle");
    }
    if (p.position < prev) {
      throw std::invalid_argument("plan_acc: pedestrians must be sorted by position");
    }
    if (!(p.crossing_prob > 0.0) || p.crossing_prob > 1.0) {
      throw std::invalid_argument("plan_acc: crossing probability must be in (0, 1]");
    }
    prev = p.position;
  }
}

struct BranchSet {
  std::vector<std::shared_ptr<const BranchProblem>> branches;
  std::vector<double> weights;
  std::vector<int> ids;  // pedestrian id per stop branch, -1 for free
  bool softened = false;
};

// Worst-case single branch: stop before the nearest hazard (covers all
// farther ones), or free cruise when there is none.
BranchSet build_single_branch(const CarState& state0,
                              const std::vector<PedestrianObs>& pedestrians,
                              const AccCostParams& params, const HorizonSpec& horizon) {
  std::optional<double> stop;
  int id = -1;
  if (!pedestrians.empty()) {
    stop = pedestrians.front().position;
    id = pedestrians.front().id;
  }
  CondensedBranch cb = condense_branch(state0, params, stop, horizon, 1.0);
  BranchSet set;
  set.softened = cb.softened;
  set.branches.push_back(std::move(cb.qp));
  set.weights = {1.0};
  set.ids = {id};
  return set;
}

BranchSet build_branches(const CarState& state0,
                         const std::vector<PedestrianObs>& pedestrians,
                         const AccCostParams& params, const HorizonSpec& horizon,
                         int cap) {
  const int n_ped = static_cast<int>(pedestrians.size());
  std::vector<double> probs;
  probs.reserve(n_ped);
  for (const auto& p : pedestrians) probs.push_back(p.crossing_prob);
  const BeliefState belief = crossing_belief(probs);

  // Capped trees keep the cap-1 nearest stop hypotheses; the farther
  // crossing weight lands on the last kept stop branch, whose stop line
  // is nearer than any it replaces.
  int n_stop = n_ped;
  if (cap > 0 && n_ped + 1 > cap) n_stop = std::max(1, cap - 1);

  std::vector<double> weights(n_stop + 1, 0.0);
  for (int s = 0; s < n_ped; ++s) weights[std::min(s, n_stop - 1)] += belief[s];
  weights[n_stop] = belief[n_ped];

  BranchSet out;
  for (int s = 0; s < n_stop; ++s) {
    CondensedBranch cb =
        condense_branch(state0, params, pedestrians[s].position, horizon, weights[s]);
    out.softened = out.softened || cb.softened;
    out.branches.push_back(std::move(cb.qp));
    out.ids.push_back(pedestrians[s].id);
  }
  out.branches.push_back(
      condense_branch(state0, params, std::nullopt, horizon, weights[n_stop]).qp);
  out.ids.push_back(-1);
  out.weights = std::move(weights);
  return out;
}

AccPlan finish_plan(dal::SolveResult&& result,
                    BranchSet&& set, const AccCostParams& params) {
  AccPlan plan;
  plan.first_control =
      std::clamp(result.tree.trunk_at(0), params.u_min, params.u_max);
  plan.tree = std::move(result.tree);
  plan.report = std::move(result.report);
  plan.belief = std::move(set.weights);
  plan.branch_ids = std::move(set.ids);
  plan.soft_stop = set.softened;
  return plan;
}

}  // namespace

AccPlan plan_acc(const CarState& state0, const std::vector<PedestrianObs>& pedestrians,
                 const AccCostParams& params, const HorizonSpec& horizon,
                 const dal::SolverConfig& cfg, int workers, int cap) {
  validate_pedestrians(state0, pedestrians);
  BranchSet set = build_branches(state0, pedestrians, params, horizon, cap);
  TreeProblem problem = build_tree_problem(
      std::vector<std::shared_ptr<const BranchProblem>>(set.branches), horizon, 1);
  auto result = dal::solve(problem, dal::zero_branch_init(problem),
                           dal::zero_trunk_init(problem), cfg, workers);
  return finish_plan(std::move(result), std::move(set), params);
}

AccPlan baseline_single_hypothesis(const CarState& state0,
                                   const std::vector<PedestrianObs>& pedestrians,
                                   const AccCostParams& params, const HorizonSpec& horizon,
                                   const dal::SolverConfig& cfg) {
  validate_pedestrians(state0, pedestrians);
  BranchSet set = build_single_branch(state0, pedestrians, params, horizon);
  TreeProblem problem = build_tree_problem(
      std::vector<std::shared_ptr<const BranchProblem>>(set.branches), horizon, 1);
  auto result = dal::solve(problem, dal::zero_branch_init(problem),
                           dal::zero_trunk_init(problem), cfg, 1);
  return finish_plan(std::move(result), std::move(set), params);
}

namespace {

// Inequality rows are per-time-step segments (stop rows, then the two bound
// rows); a warm start that shifts z by `shift` steps must shift the
// multipliers the same way, replicating the tail entry.
Eigen::VectorXd shift_lambda_segments(const Eigen::VectorXd& lambda, int T, int shift) {
  if (shift == 0) return lambda;
  Eigen::VectorXd out(lambda.size());
  const int segments = static_cast<int>(lambda.size()) / T;
  for (int seg = 0; seg < segments; ++seg) {
    for (int t = 0; t < T; ++t) {
      out[seg * T + t] = lambda[seg * T + std::min(t + shift, T - 1)];
    }
  }
  return out;
}

}  // namespace

AccPlan AccPlanner::plan(const CarState& state0,
                         const std::vector<PedestrianObs>& pedestrians, double now) {
  validate_pedestrians(state0, pedestrians);
  BranchSet set = mode_ == AccMode::kSingleHypothesis
                      ? build_single_branch(state0, pedestrians, params_, horizon_)
                      : build_branches(state0, pedestrians, params_, horizon_, cap_);
  TreeProblem problem = build_tree_problem(
      std::vector<std::shared_ptr<const BranchProblem>>(set.branches), horizon_, 1);

  const int T = horizon_.total_steps;
  int shift = 0;
  if (has_prev_) {
    shift = static_cast<int>(std::lround((now - prev_time_) / horizon_.dt));
    shift = std::clamp(shift, 0, T - 1);
  }

  const int N = problem.num_branches();
  std::vector<Eigen::VectorXd> z_init(N, Eigen::VectorXd::Zero(T));
  std::vector<dal::DualState> duals;
  duals.reserve(N);
  for (int s = 0; s < N; ++s) {
    auto d = dal::DualState::zeros(problem.branch(s).num_ineq(),
                                   problem.branch(s).num_eq(), problem.trunk_size());
    const auto it = cache_.find(set.ids[s]);
    if (it != cache_.end()) {
      for (int t = 0; t < T; ++t) z_init[s][t] = it->second.z[std::min(t + shift, T - 1)];
      if (it->second.lambda.size() == d.lambda.size()) {
        d.lambda = shift_lambda_segments(it->second.lambda, T, shift);
      }
    }
    duals.push_back(std::move(d));
  }
  Eigen::VectorXd ztilde_init = dal::update_consensus(z_init, problem.trunk_size());

  auto result = dal::solve(problem, z_init, ztilde_init, cfg_, workers_, &duals);

  cache_.clear();
  for (int s = 0; s < N; ++s) {
    cache_[set.ids[s]] = BranchMemory{result.tree.branch_vars[s], result.duals[s].lambda};
  }
  prev_time_ = now;
  has_prev_ = true;
  return finish_plan(std::move(result), std::move(set), params_);
}

void write_tree_csv(std::ostream& out, const ControlTree& tree, const CarState& state0) {
  CsvWriter csv({"branch", "t", "x[m]", "v[m/s]", "u[m/s2]", "p_branch"});
  const double dt = tree.horizon.dt;
  // Consensus trunk as branch -1.
  CarState s = state0;
  for (int t = 0; t < tree.horizon.trunk_steps; ++t) {
    const double u = tree.trunk_at(t);
    csv.add_row(CsvWriter::Row()
                    .integer(-1)
                    .integer(t)
                    .num(s.x)
                    .num(s.v)
                    .num(u)
                    .num(1.0)
                    .take());
    s = step_dynamics(s, u, dt);
  }
  for (size_t b = 0; b < tree.branch_vars.size(); ++b) {
    s = state0;
    for (int t = 0; t < tree.horizon.total_steps; ++t) {
      const double u = tree.at(static_cast<int>(b), t);
      csv.add_row(CsvWriter::Row()
                      .integer(static_cast<long long>(b))
                      .integer(t)
                      .num(s.x)
                      .num(s.v)
                      .num(u)
                      .num(tree.weights[b])
                      .take());
      s = step_dynamics(s, u, dt);
    }
  }
  out << csv.to_string();
}

}  // namespace ctrees::acc
