#pragma once

#include <cmath>
#include <stdexcept>

namespace ctrees::slalom {

// Wraps to (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * M_PI);
  if (w <= -M_PI) w = M_PI;
  return w;
}

struct Pose2 {
  double x = 0.0;      // m
  double y = 0.0;      // m
  double theta = 0.0;  // rad, normalized to (-pi, pi] at construction

  Pose2() = default;
  Pose2(double px, double py, double heading) : x(px), y(py), theta(wrap_angle(heading)) {}
};

enum class Presence { kUncertain, kPresent, kAbsent };

struct ObstacleHyp {
  int id = -1;
  double cx = 0.0;
  double cy = 0.0;
  double radius = 1.0;          // m, > 0
  double existence_prob = 0.0;  // in [0, 1]
  Presence resolved = Presence::kUncertain;
};

struct SlalomCostParams {
  double w_acc = 1.0;     // squared accelerations (x, y, theta)
  double w_center = 0.1;  // squared distance to the centerline (y = 0)
  double w_speed = 0.5;   // squared speed error
  double v_desired = 10.0;
  double d_avoid = 1.0;   // m added to obstacle radii
  // Literal reading of the printed kinematic constraint
  // (xdot cos θ - ydot sin θ = 0); kept for study. The default is the
  // body-lateral no-slip form xdot sin θ - ydot cos θ = 0.
  bool literal_nonholonomic = false;

  void validate() const {
    if (w_acc < 0 || w_center < 0 || w_speed < 0 || d_avoid < 0) {
      throw std::invalid_argument("slalom: weights and d_avoid must be >= 0");
    }
  }
};

}  // namespace ctrees::slalom
