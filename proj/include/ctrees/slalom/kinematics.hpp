#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "ctrees/slalom/types.hpp"

namespace ctrees::slalom {

struct Velocity2 {
  double xd = 0.0;
  double yd = 0.0;
  double thetad = 0.0;
};

struct Accel2 {
  double xdd = 0.0;
  double ydd = 0.0;
  double thetadd = 0.0;
};

// Backward difference (q_t - q_{t-1}) / dt; heading difference wrapped.
inline Velocity2 fd_velocity(const Pose2& q_t, const Pose2& q_prev, double dt) {
  return Velocity2{(q_t.x - q_prev.x) / dt, (q_t.y - q_prev.y) / dt,
                   wrap_angle(q_t.theta - q_prev.theta) / dt};
}

// (q_t - 2 q_{t-1} + q_{t-2}) / dt^2 with locally unwrapped headings.
inline Accel2 fd_acceleration(const Pose2& q_t, const Pose2& q_1, const Pose2& q_2,
                              double dt) {
  const double dth1 = wrap_angle(q_t.theta - q_1.theta);
  const double dth2 = wrap_angle(q_1.theta - q_2.theta);
  return Accel2{(q_t.x - 2.0 * q_1.x + q_2.x) / (dt * dt),
                (q_t.y - 2.0 * q_1.y + q_2.y) / (dt * dt), (dth1 - dth2) / (dt * dt)};
}

// Zero lateral body-frame velocity: xdot sin θ_t - ydot cos θ_t, with
// finite-difference velocities. literal=true evaluates the printed variant
// xdot cos θ_t - ydot sin θ_t instead. grad_* (optional) receive
// d/d(x_t, y_t, theta_t) and d/d(x_{t-1}, y_{t-1}, theta_{t-1}).
inline double nonholonomic_residual(const Pose2& q_t, const Pose2& q_prev, double dt,
                                    bool literal = false,
                                    std::array<double, 3>* grad_t = nullptr,
                                    std::array<double, 3>* grad_prev = nullptr) {
  const double vx = (q_t.x - q_prev.x) / dt;
  const double vy = (q_t.y - q_prev.y) / dt;
  const double c = std::cos(q_t.theta);
  const double s = std::sin(q_t.theta);
  double value, dvx, dvy, dth;
  if (literal) {
    value = vx * c - vy * s;
    dvx = c;
    dvy = -s;
    dth = -vx * s - vy * c;
  } else {
    value = vx * s - vy * c;
    dvx = s;
    dvy = -c;
    dth = vx * c + vy * s;
  }
  if (grad_t) *grad_t = {dvx / dt, dvy / dt, dth};
  if (grad_prev) *grad_prev = {-dvx / dt, -dvy / dt, 0.0};
  return value;
}

// Inequality value (radius + d_avoid) - |p - center|, feasible <= 0.
// At exact center coincidence the gradient direction is pinned to the
// centerline normal (0, 1).
inline double obstacle_clearance(const Pose2& q, const ObstacleHyp& obstacle,
                                 double d_avoid, std::array<double, 2>* grad = nullptr) {
  const double dx = q.x - obstacle.cx;
  const double dy = q.y - obstacle.cy;
  const double dist = std::hypot(dx, dy);
  if (grad) {
    if (dist < 1e-12) {
      *grad = {0.0, -1.0};
    } else {
      *grad = {-dx / dist, -dy / dist};
    }
  }
  return obstacle.radius + d_avoid - dist;
}

}  // namespace ctrees::slalom
