#include "ctrees/acc/model.hpp"

#include <cmath>

namespace ctrees::acc {

CondensedBranch condense_branch(const CarState& state0, const AccCostParams& params,
                                std::optional<double> stop_position,
                                const HorizonSpec& horizon, double weight) {
  params.validate();
  const int T = horizon.total_steps;
  const double dt = horizon.dt;

  // v_t = v0 + dt * sum_{i<t} u_i, rows t = 1..T.
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(T, T);
  for (int t = 1; t <= T; ++t) {
    for (int i = 0; i < t; ++i) M(t - 1, i) = dt;
  }
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(T);
  const double v_err0 = state0.v - params.v_desired;

  // k_v |M u + v_err0 1|^2 + k_u |u|^2 as 0.5 u'Hu + f'u + c0.
  Eigen::MatrixXd H = 2.0 * params.k_v * (M.transpose() * M);
  H.diagonal().array() += 2.0 * params.k_u;
  Eigen::VectorXd f = 2.0 * params.k_v * v_err0 * (M.transpose() * ones);
  const double c0 = params.k_v * v_err0 * v_err0 * T;

  auto qp = std::make_shared<QuadraticBranch>(std::move(H), std::move(f), c0, weight);

  // Stop rows: x_t = x0 + t dt v0 + dt^2 sum_{i<=t-2} (t-1-i) u_i <= stop - d.
  Eigen::MatrixXd A_stop;
  Eigen::VectorXd b_stop;
  bool softened = false;
  if (stop_position) {
    const double bound = *stop_position - params.d_safety;
    A_stop = Eigen::MatrixXd::Zero(T, T);
    b_stop.resize(T);
    for (int t = 1; t <= T; ++t) {
      for (int i = 0; i <= t - 2; ++i) A_stop(t - 1, i) = dt * dt * (t - 1 - i);
      b_stop[t - 1] = bound - state0.x - t * dt * state0.v;
    }
    // Emergency check: does full braking still cross the line?
    CarState s = state0;
    double max_x = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < T; ++t) {
      s = step_dynamics(s, params.u_min, dt);
      max_x = std::max(max_x, s.x);
    }
    softened = max_x > bound + 1e-12;
  }

  const int n_stop = softened ? 0 : static_cast<int>(A_stop.rows());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n_stop + 2 * T, T);
  Eigen::VectorXd b(n_stop + 2 * T);
  if (!softened && stop_position) {
    A.topRows(n_stop) = A_stop;
    b.head(n_stop) = b_stop;
  }
  for (int t = 0; t < T; ++t) {
    A(n_stop + t, t) = 1.0;
    b[n_stop + t] = params.u_max;
    A(n_stop + T + t, t) = -1.0;
    b[n_stop + T + t] = -params.u_min;
  }
  qp->set_inequalities(std::move(A), std::move(b));
  if (softened) {
    qp->set_soft_inequalities(std::move(A_stop), std::move(b_stop), 1e3);
  }
  return CondensedBranch{std::move(qp), softened};
}

int max_branch_count(double density_per_km, const HorizonSpec& horizon, double v_max,
                     double brake_max, int cap) {
  if (density_per_km < 0) throw std::invalid_argument("max_branch_count: density >= 0");
  const double Th = horizon.horizon_seconds();
  const double envelope = std::max(0.0, v_max * Th - v_max * v_max / (2.0 * brake_max));
  const int pedestrians = static_cast<int>(std::floor(density_per_km / 1000.0 * envelope));
  const int full = pedestrians + 1;
  return cap > 0 ? std::min(cap, full) : full;
}

}  // namespace ctrees::acc
