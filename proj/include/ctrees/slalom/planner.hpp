#pragma once

#include <map>
#include <ostream>
#include <vector>

#include "ctrees/slalom/branch.hpp"
#include "ctrees/solver/solve.hpp"

namespace ctrees::slalom {

// Solver constants tuned to the configuration-space transcription, whose
// cost curvature (~1/dt^4 from the acceleration terms) sits two orders of
// magnitude above the condensed control-space QPs'; the consensus penalty
// scales accordingly.
inline dal::SolverConfig default_solver_config() {
  dal::SolverConfig cfg;
  cfg.rho = 40.0;
  return cfg;
}

struct SlalomPlan {
  ControlTree tree;
  dal::SolveReport report;
  std::vector<double> weights;
  // Present-obstacle ids per branch (branch order as enumerated).
  std::vector<std::vector<int>> branch_obstacles;
  Pose2 first_pose;  // trunk step 0, the pose command to track
};

// One planning cycle. Obstacles resolved absent (or existence 0) are
// dropped, resolved present (or existence 1) constrain every branch, and the
// unresolved ones are enumerated over their 2^k presence combinations
// (branch order per existence_branch_weights). k above max_uncertain is
// rejected; callers wanting bigger scenes must pre-merge (see the harness,
// which treats the far uncertain obstacles as present).
SlalomPlan plan_slalom(const Pose2& q0, const Pose2& q_prev,
                       const std::vector<ObstacleHyp>& obstacles,
                       const SlalomCostParams& params, const HorizonSpec& horizon,
                       const dal::SolverConfig& cfg, int workers = 1,
                       int max_uncertain = 4);

// Receding-horizon wrapper with warm starts keyed by each branch's
// present-obstacle id set.
class SlalomPlanner {
 public:
  SlalomPlanner(SlalomCostParams params, HorizonSpec horizon, dal::SolverConfig cfg,
                int workers = 1, int max_uncertain = 4)
      : params_(params),
        horizon_(horizon),
        cfg_(cfg),
        workers_(workers),
        max_uncertain_(max_uncertain) {}

  SlalomPlan plan(const Pose2& q0, const Pose2& q_prev,
                  const std::vector<ObstacleHyp>& obstacles, double now);

  void reset() { cache_.clear(); has_prev_ = false; }

 private:
  struct BranchMemory {
    Eigen::VectorXd z;
    Eigen::VectorXd lambda;
    Eigen::VectorXd kappa;
  };

  SlalomCostParams params_;
  HorizonSpec horizon_;
  dal::SolverConfig cfg_;
  int workers_;
  int max_uncertain_;
  std::map<std::vector<int>, BranchMemory> cache_;
  double prev_time_ = 0.0;
  bool has_prev_ = false;
};

// Tree dump rows (branch, t, x, y, theta, p_branch); trunk as branch -1.
void write_tree_csv(std::ostream& out, const ControlTree& tree);

}  // namespace ctrees::slalom
