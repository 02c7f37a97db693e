#pragma once

#include <map>
#include <ostream>
#include <vector>

#include "ctrees/acc/model.hpp"
#include "ctrees/belief.hpp"
#include "ctrees/solver/solve.hpp"

namespace ctrees::acc {

struct AccPlan {
  ControlTree tree;
  dal::SolveReport report;
  std::vector<double> belief;   // branch weights in branch order
  std::vector<int> branch_ids;  // pedestrian id per stop branch, -1 for free
  bool soft_stop = false;       // some branch needed the emergency softening
  double first_control = 0.0;   // trunk u(0), the command to execute
};

// One planning cycle: belief from crossing_belief over the given pedestrians
// (ahead of the vehicle, sorted by increasing position, probabilities in
// (0, 1]); branch s stops before pedestrian s, the last branch is the free
// road. cap > 0 keeps the cap-1 nearest stop branches and merges the weight
// of the farther crossing hypotheses into the last kept one (conservative:
// its stop line is nearer than theirs).
//
// Stateless: cold zero initialization per the solver default. Use AccPlanner
// for receding-horizon runs.
AccPlan plan_acc(const CarState& state0, const std::vector<PedestrianObs>& pedestrians,
                 const AccCostParams& params, const HorizonSpec& horizon,
                 const dal::SolverConfig& cfg, int workers = 1, int cap = 0);

// Worst-case single-hypothesis plan: one branch stopping before the nearest
// pedestrian that might cross (same solver, N=1). No pedestrians -> free
// cruise branch.
AccPlan baseline_single_hypothesis(const CarState& state0,
                                   const std::vector<PedestrianObs>& pedestrians,
                                   const AccCostParams& params, const HorizonSpec& horizon,
                                   const dal::SolverConfig& cfg);

enum class AccMode {
  kTree,             // belief-weighted branches per hypothesis
  kSingleHypothesis  // one worst-case branch: stop before the nearest hazard
};

// Receding-horizon planner with warm starts: previous solutions shifted by
// the elapsed planner steps (last step replicated), AuLa duals kept per
// surviving hypothesis, ADMM duals reset.
class AccPlanner {
 public:
  AccPlanner(AccCostParams params, HorizonSpec horizon, dal::SolverConfig cfg,
             int workers = 1, int cap = 0, AccMode mode = AccMode::kTree)
      : params_(params),
        horizon_(horizon),
        cfg_(cfg),
        workers_(workers),
        cap_(cap),
        mode_(mode) {}

  // now: simulation time in seconds, used to derive the warm-start shift.
  AccPlan plan(const CarState& state0, const std::vector<PedestrianObs>& pedestrians,
               double now);

  void reset() { cache_.clear(); has_prev_ = false; }
  const AccCostParams& params() const { return params_; }

 private:
  struct BranchMemory {
    Eigen::VectorXd z;
    Eigen::VectorXd lambda;
  };

  AccCostParams params_;
  HorizonSpec horizon_;
  dal::SolverConfig cfg_;
  int workers_;
  int cap_;
  AccMode mode_ = AccMode::kTree;
  std::map<int, BranchMemory> cache_;  // keyed by pedestrian id, -1 = free branch
  double prev_time_ = 0.0;
  bool has_prev_ = false;
};

// Tree dump rows (branch, t, x, v, u, p_branch); states reconstructed by the
// dynamics rollout from state0. The consensus trunk is emitted as branch -1
// with p_branch 1.
void write_tree_csv(std::ostream& out, const ControlTree& tree, const CarState& state0);

}  // namespace ctrees::acc
