#include "ctrees/slalom/branch.hpp"

#include <cmath>
#include <stdexcept>

namespace ctrees::slalom {

namespace {

// One squared residual with its sparse gradient: entries (t, coord, d/dq).
struct Entry {
  int t;
  int coord;
  double d;
};

void accumulate(double r, std::initializer_list<Entry> entries, double& value,
                Eigen::VectorXd* grad, Eigen::MatrixXd* curv) {
  value += r * r;
  if (!grad && !curv) return;
  for (const Entry& ei : entries) {
    if (ei.t < 0) continue;
    const int i = 3 * ei.t + ei.coord;
    if (grad) (*grad)[i] += 2.0 * r * ei.d;
    if (curv) {
      for (const Entry& ej : entries) {
        if (ej.t < 0) continue;
        (*curv)(i, 3 * ej.t + ej.coord) += 2.0 * ei.d * ej.d;
      }
    }
  }
}

}  // namespace

SlalomBranch::SlalomBranch(Pose2 q0, Pose2 q_prev, std::vector<ObstacleHyp> obstacles,
                           SlalomCostParams params, HorizonSpec horizon, double weight)
    : q0_(q0),
      q_prev_(q_prev),
      obstacles_(std::move(obstacles)),
      params_(params),
      horizon_(horizon),
      weight_(weight) {
  params_.validate();
  for (const auto& o : obstacles_) {
    if (!(o.radius > 0)) throw std::invalid_argument("slalom: obstacle radius > 0");
  }
}

Pose2 SlalomBranch::pose_at(const Eigen::VectorXd& z, int t) const {
  if (t == -1) return q0_;
  if (t == -2) return q_prev_;
  return Pose2(z[3 * t], z[3 * t + 1], z[3 * t + 2]);
}

double SlalomBranch::cost(const Eigen::VectorXd& z, Eigen::VectorXd* grad,
                          Eigen::MatrixXd* curv) const {
  const int T = horizon_.total_steps;
  const double dt = horizon_.dt;
  if (grad) grad->setZero(num_vars());
  if (curv) curv->setZero(num_vars(), num_vars());

  double value = 0.0;
  const double sa = std::sqrt(params_.w_acc);
  const double sc = std::sqrt(params_.w_center);
  const double ss = std::sqrt(params_.w_speed);
  const double inv_dt2 = 1.0 / (dt * dt);

  for (int t = 0; t < T; ++t) {
    const Pose2 a = pose_at(z, t);
    const Pose2 b = pose_at(z, t - 1);
    const Pose2 c = pose_at(z, t - 2);

    if (params_.w_acc > 0) {
      const Accel2 acc = fd_acceleration(a, b, c, dt);
      accumulate(sa * acc.xdd,
                 {{t, 0, sa * inv_dt2}, {t - 1, 0, -2.0 * sa * inv_dt2}, {t - 2, 0, sa * inv_dt2}},
                 value, grad, curv);
      accumulate(sa * acc.ydd,
                 {{t, 1, sa * inv_dt2}, {t - 1, 1, -2.0 * sa * inv_dt2}, {t - 2, 1, sa * inv_dt2}},
                 value, grad, curv);
      accumulate(sa * acc.thetadd,
                 {{t, 2, sa * inv_dt2}, {t - 1, 2, -2.0 * sa * inv_dt2}, {t - 2, 2, sa * inv_dt2}},
                 value, grad, curv);
    }
    if (params_.w_center > 0) {
      accumulate(sc * a.y, {{t, 1, sc}}, value, grad, curv);
    }
    if (params_.w_speed > 0) {
      const double vx = (a.x - b.x) / dt;
      const double vy = (a.y - b.y) / dt;
      const double speed = std::hypot(vx, vy);
      const double denom = std::max(speed, 1e-12);
      const double dx = ss * vx / (denom * dt);
      const double dy = ss * vy / (denom * dt);
      accumulate(ss * (speed - params_.v_desired),
                 {{t, 0, dx}, {t, 1, dy}, {t - 1, 0, -dx}, {t - 1, 1, -dy}}, value, grad,
                 curv);
    }
  }
  return value;
}

void SlalomBranch::eq(const Eigen::VectorXd& z, Eigen::VectorXd& h,
                      Eigen::MatrixXd* jac) const {
  const int T = horizon_.total_steps;
  h.resize(T);
  if (jac) jac->setZero(T, num_vars());
  for (int t = 0; t < T; ++t) {
    const Pose2 a = pose_at(z, t);
    const Pose2 b = pose_at(z, t - 1);
    std::array<double, 3> ga, gb;
    h[t] = nonholonomic_residual(a, b, horizon_.dt, params_.literal_nonholonomic, &ga, &gb);
    if (jac) {
      for (int c = 0; c < 3; ++c) (*jac)(t, 3 * t + c) = ga[c];
      if (t >= 1) {
        for (int c = 0; c < 3; ++c) (*jac)(t, 3 * (t - 1) + c) = gb[c];
      }
    }
  }
}

void SlalomBranch::ineq(const Eigen::VectorXd& z, Eigen::VectorXd& g,
                        Eigen::MatrixXd* jac) const {
  const int T = horizon_.total_steps;
  const int n_obs = static_cast<int>(obstacles_.size());
  g.resize(n_obs * T);
  if (jac) jac->setZero(n_obs * T, num_vars());
  for (int o = 0; o < n_obs; ++o) {
    for (int t = 0; t < T; ++t) {
      const Pose2 a = pose_at(z, t);
      std::array<double, 2> gr;
      g[o * T + t] = obstacle_clearance(a, obstacles_[o], params_.d_avoid, &gr);
      if (jac) {
        (*jac)(o * T + t, 3 * t) = gr[0];
        (*jac)(o * T + t, 3 * t + 1) = gr[1];
      }
    }
  }
}

Eigen::VectorXd SlalomBranch::straight_rollout() const {
  const int T = horizon_.total_steps;
  const double dt = horizon_.dt;
  const double c = std::cos(q0_.theta);
  const double s = std::sin(q0_.theta);
  const double v0 =
      ((q0_.x - q_prev_.x) / dt) * c + ((q0_.y - q_prev_.y) / dt) * s;
  Eigen::VectorXd z(num_vars());
  for (int t = 0; t < T; ++t) {
    z[3 * t] = q0_.x + (t + 1) * v0 * dt * c;
    z[3 * t + 1] = q0_.y + (t + 1) * v0 * dt * s;
    z[3 * t + 2] = q0_.theta;
  }
  return z;
}

std::shared_ptr<const SlalomBranch> build_slalom_branch(
    const Pose2& q0, const Pose2& q_prev, std::vector<ObstacleHyp> present_obstacles,
    const SlalomCostParams& params, const HorizonSpec& horizon, double weight) {
  return std::make_shared<SlalomBranch>(q0, q_prev, std::move(present_obstacles), params,
                                        horizon, weight);
}

std::vector<double> existence_branch_weights(const std::vector<double>& probs) {
  const int k = static_cast<int>(probs.size());
  for (double p : probs) {
    if (!(p >= 0.0) || p > 1.0) {
      throw std::invalid_argument("existence_branch_weights: probability outside [0, 1]");
    }
  }
  const int count = 1 << k;
  std::vector<double> weights(count, 0.0);
  double partial = 0.0;
  for (int mask = 0; mask < count - 1; ++mask) {
    double w = 1.0;
    for (int i = 0; i < k; ++i) {
      w *= (mask >> i) & 1 ? 1.0 - probs[i] : probs[i];
    }
    weights[mask] = w;
    partial += w;
  }
  weights[count - 1] = std::fmax(0.0, 1.0 - partial);  // all absent, by complement
  return weights;
}

}  // namespace ctrees::slalom
