#pragma once

#include <Eigen/Core>
#include <vector>

#include "ctrees/horizon.hpp"

namespace ctrees {

// Optimized branched policy: per-branch variable sequences (each T*d,
// stacked step-major) and the consensus trunk (L*d). Branch order is the
// discrete-state order of the problem that produced it.
struct ControlTree {
  HorizonSpec horizon;
  int var_dim;
  std::vector<Eigen::VectorXd> branch_vars;
  std::vector<double> weights;
  Eigen::VectorXd consensus;

  // Value of variable j at step t on branch s.
  double at(int s, int t, int j = 0) const { return branch_vars[s][t * var_dim + j]; }
  // Value of variable j at trunk step t.
  double trunk_at(int t, int j = 0) const { return consensus[t * var_dim + j]; }
};

}  // namespace ctrees
