#pragma once

#include <Eigen/Core>

namespace ctrees::dal {

// Per-branch dual variables: lambda for inequalities (entrywise >= 0),
// kappa for equalities, eta for the consensus coupling on the trunk.
struct DualState {
  Eigen::VectorXd lambda;  // size num_ineq
  Eigen::VectorXd kappa;   // size num_eq
  Eigen::VectorXd eta;     // size trunk_size (L*d)

  static DualState zeros(int num_ineq, int num_eq, int trunk_size) {
    DualState d;
    d.lambda = Eigen::VectorXd::Zero(num_ineq);
    d.kappa = Eigen::VectorXd::Zero(num_eq);
    d.eta = Eigen::VectorXd::Zero(trunk_size);
    return d;
  }
};

}  // namespace ctrees::dal
