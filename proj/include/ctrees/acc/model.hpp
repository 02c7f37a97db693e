#pragma once

#include <memory>
#include <optional>
#include <stdexcept>

#include "ctrees/horizon.hpp"
#include "ctrees/problem.hpp"

namespace ctrees::acc {

// Longitudinal state of the ego vehicle.
struct CarState {
  double x = 0.0;  // m
  double v = 0.0;  // m/s
};

struct AccCostParams {
  double k_v = 1.0;        // speed tracking weight
  double k_u = 5.0;        // acceleration weight
  double v_desired = 13.4; // m/s (48 km/h)
  double d_safety = 2.5;   // m, kept to a stop line
  double u_min = -8.0;     // m/s^2
  double u_max = 2.0;      // m/s^2

  void validate() const {
    if (!(k_v > 0 && k_u > 0)) throw std::invalid_argument("acc: k_v, k_u > 0");
    if (!(u_min < u_max)) throw std::invalid_argument("acc: u_min < u_max");
    if (d_safety < 0) throw std::invalid_argument("acc: d_safety >= 0");
  }
};

enum class Resolution { kUncertain, kCrossing, kNotCrossing };

struct PedestrianObs {
  int id = -1;
  double position = 0.0;      // m, longitudinal
  double crossing_prob = 0.0; // in [0, 1]
  Resolution resolved = Resolution::kUncertain;
};

// x' = x + dt v, v' = v + dt u.
inline CarState step_dynamics(const CarState& state, double u, double dt) {
  return CarState{state.x + dt * state.v, state.v + dt * u};
}

// Condensed branch QP over controls u(0..T-1): states eliminated by the
// dynamics rollout. Cost sum_t [k_v (v_t - v_des)^2 + k_u u_t^2] with the
// speed term at the states each control produces. Inequalities, in row order:
// stop rows x_t <= stop - d_safety for t = 1..T (when a stop is given), then
// u_t <= u_max, then -u_t <= -u_min.
struct CondensedBranch {
  std::shared_ptr<QuadraticBranch> qp;
  bool softened = false;  // stop infeasible even at full braking; rows moved
                          // to a soft quadratic penalty (weight 1e3)
};

CondensedBranch condense_branch(const CarState& state0, const AccCostParams& params,
                                std::optional<double> stop_position,
                                const HorizonSpec& horizon, double weight);

// Branches needed in the worst case: pedestrians inside the stopping
// envelope W = v*Th - v^2/(2 brake) (farthest stop line reachable while
// still halting within the horizon), plus the free-road branch. cap > 0
// bounds the answer (capped trees merge the far crossing hypotheses into
// the last kept stop branch).
int max_branch_count(double density_per_km, const HorizonSpec& horizon,
                     double v_max = 13.9, double brake_max = 8.0, int cap = 0);

}  // namespace ctrees::acc
