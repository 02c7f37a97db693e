#include "ctrees/sim/episode.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>

#include "ctrees/acc/planner.hpp"
#include "ctrees/slalom/planner.hpp"

namespace ctrees::sim {

namespace {

using Clock = std::chrono::steady_clock;

double percentile95(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const size_t idx =
      std::min(xs.size() - 1, static_cast<size_t>(std::ceil(0.95 * xs.size())) - 1);
  return xs[idx];
}

struct PlanTimer {
  std::vector<double> samples;
  template <typename F>
  auto time(F&& f) {
    const auto t0 = Clock::now();
    auto out = f();
    samples.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    return out;
  }
};

int slalom_uncertain_cap(const ControllerSpec& ctrl) {
  if (ctrl.cap <= 0) return 4;  // full tree, library hard cap
  int k = 0;
  while ((1 << (k + 1)) <= ctrl.cap) ++k;
  return k;
}

EpisodeMetrics run_acc_episode(const ScenarioConfig& cfg, const ControllerSpec& ctrl,
                               int workers, EpisodeTrace* trace) {
  const Scene scene = generate_scene(cfg);
  PerceptionSim percept(scene, cfg);
  const acc::AccCostParams& params = cfg.acc_params;

  const bool single = ctrl.kind != ControllerKind::kTree;
  acc::AccPlanner planner(params, cfg.horizon, cfg.solver, workers,
                          single ? 0 : ctrl.cap,
                          single ? acc::AccMode::kSingleHypothesis : acc::AccMode::kTree);

  const double dt = 1.0 / cfg.control_rate;
  const long cycles = std::lround(cfg.duration * cfg.control_rate);
  const double window = cfg.acc_window();

  acc::CarState car{0.0, params.v_desired};
  double u_prev = 0.0;
  double cost_sum = 0.0;
  double speed_sum = 0.0;
  EpisodeMetrics m;
  PlanTimer timer;
  std::set<int> collided;
  std::set<int> overshot;

  if (trace) trace->header = {"t[s]", "x[m]", "v[m/s]", "u[m/s2]", "cost[step]"};

  for (long c = 0; c < cycles; ++c) {
    const double now = c * dt;
    percept.update(car.x, now);

    std::vector<acc::PedestrianObs> obs;
    if (ctrl.kind == ControllerKind::kOracle) {
      for (const Pedestrian& p : scene.pedestrians) {
        if (!p.will_cross) continue;
        if (percept.pedestrian_phase(p.id) == PerceptionSim::Phase::kGone) continue;
        obs.push_back({p.id, p.position, 1.0, acc::Resolution::kCrossing});
      }
    } else {
      obs = percept.pedestrian_observations(car.x);
    }
    std::erase_if(obs, [&](const acc::PedestrianObs& p) {
      return p.position <= car.x || p.position - car.x > window || !(p.crossing_prob > 0.0);
    });

    double u = u_prev;
    bool violated = false;
    try {
      const acc::AccPlan plan =
          timer.time([&] { return planner.plan(car, obs, now); });
      u = plan.first_control;
      if (plan.soft_stop) {
        ++m.soft_stop_cycles;
        violated = true;
      }
      if (!plan.report.history.empty() &&
          plan.report.history.back().aula_pri > 10.0 * cfg.solver.eps_pri) {
        ++m.nonconverged_cycles;
        violated = true;
#ifdef CTREES_DEBUG_NONCONV
        fprintf(stderr, "[nonconv] c=%ld x=%.2f v=%.2f obs=%zu res=%.4g iters=%d\n", c,
                car.x, car.v, obs.size(), plan.report.history.back().aula_pri,
                plan.report.iterations);
#endif
      }
    } catch (const std::exception&) {
      ++m.solver_failures;  // keep the previous command, episode continues
    }
    u_prev = u;

    car = acc::step_dynamics(car, u, dt);
    car.v = std::max(0.0, car.v);  // the plant cannot roll backwards

    const double dv = car.v - params.v_desired;
    const double step_cost = params.k_v * dv * dv + params.k_u * u * u;
    cost_sum += step_cost;
    speed_sum += car.v;

    for (const Pedestrian& p : scene.pedestrians) {
      if (percept.pedestrian_phase(p.id) != PerceptionSim::Phase::kOccupying) continue;
      if (car.x >= p.position && collided.insert(p.id).second) ++m.collision_count;
      if (car.x > p.position - params.d_safety + 0.02 && overshot.insert(p.id).second) {
        ++m.overshoot_count;
        violated = true;
      }
    }
    if (violated) ++m.violation_count;

    if (trace) trace->rows.push_back({now, car.x, car.v, u, step_cost});
  }

  m.cycles = cycles;
  m.avg_cost = cycles > 0 ? cost_sum / cycles : 0.0;
  m.avg_speed = cycles > 0 ? speed_sum / cycles : 0.0;
  if (!timer.samples.empty()) {
    double s = 0.0;
    for (double x : timer.samples) s += x;
    m.mean_plan_ms = s / timer.samples.size();
    m.p95_plan_ms = percentile95(timer.samples);
  }
  return m;
}

EpisodeMetrics run_slalom_episode(const ScenarioConfig& cfg, const ControllerSpec& ctrl,
                                  int workers, EpisodeTrace* trace) {
  const Scene scene = generate_scene(cfg);
  PerceptionSim percept(scene, cfg);
  const slalom::SlalomCostParams& params = cfg.slalom_params;

  const int uncertain_cap = slalom_uncertain_cap(ctrl);
  slalom::SlalomPlanner planner(params, cfg.horizon, cfg.solver, workers, 4);

  const double dt = 1.0 / cfg.control_rate;
  const double dt_plan = cfg.horizon.dt;
  const long cycles = std::lround(cfg.duration * cfg.control_rate);
  const double window = cfg.slalom_window();

  slalom::Pose2 pose(0.0, 0.0, 0.0);
  double v_cmd = params.v_desired;
  double w_cmd = 0.0;
  // Pose history at plant rate for the realized-cost finite differences.
  slalom::Pose2 hist1(pose.x - v_cmd * dt, 0.0, 0.0);
  slalom::Pose2 hist2(pose.x - 2.0 * v_cmd * dt, 0.0, 0.0);

  double cost_sum = 0.0;
  double speed_sum = 0.0;
  EpisodeMetrics m;
  PlanTimer timer;
  std::set<int> collided;

  if (trace) {
    trace->header = {"t[s]",     "x[m]",        "y[m]",          "theta[rad]",
                     "v[m/s]",   "omega[rad/s]", "cost[step]"};
  }

  for (long c = 0; c < cycles; ++c) {
    const double now = c * dt;
    percept.update(pose.x, now);

    std::vector<slalom::ObstacleHyp> obs;
    if (ctrl.kind == ControllerKind::kOracle) {
      for (const Obstacle& o : scene.obstacles) {
        if (!o.real) continue;
        if (o.x <= pose.x - 2.0 || o.x - pose.x > window) continue;
        obs.push_back({o.id, o.x, o.y, o.radius, 1.0, slalom::Presence::kPresent});
      }
    } else {
      obs = percept.obstacle_observations(pose.x);
      std::erase_if(obs, [&](const slalom::ObstacleHyp& o) {
        return o.cx <= pose.x - 2.0 || o.cx - pose.x > window;
      });
      if (ctrl.kind == ControllerKind::kBaseline) {
        for (auto& o : obs) {
          o.existence_prob = 1.0;  // worst case: every detection is real
          o.resolved = slalom::Presence::kPresent;
        }
      } else {
        // Capped tree: only the nearest `uncertain_cap` detections stay
        // uncertain; farther ones are avoided as if present (conservative).
        int kept = 0;
        for (auto& o : obs) {
          if (o.resolved != slalom::Presence::kUncertain) continue;
          if (kept < uncertain_cap) {
            ++kept;
          } else {
            o.existence_prob = 1.0;
            o.resolved = slalom::Presence::kPresent;
          }
        }
      }
    }

    const slalom::Pose2 q_prev(pose.x - v_cmd * dt_plan * std::cos(pose.theta),
                               pose.y - v_cmd * dt_plan * std::sin(pose.theta),
                               pose.theta - w_cmd * dt_plan);
    bool violated = false;
    try {
      const slalom::SlalomPlan plan =
          timer.time([&] { return planner.plan(pose, q_prev, obs, now); });
      const double dx = plan.first_pose.x - pose.x;
      const double dy = plan.first_pose.y - pose.y;
      const double heading = plan.first_pose.theta;
      const double forward = dx * std::cos(heading) + dy * std::sin(heading);
      v_cmd = std::copysign(std::hypot(dx, dy), forward) / dt_plan;
      w_cmd = slalom::wrap_angle(plan.first_pose.theta - pose.theta) / dt_plan;
      if (!plan.report.history.empty() &&
          plan.report.history.back().aula_pri > 10.0 * cfg.solver.eps_pri) {
        ++m.nonconverged_cycles;
        violated = true;
      }
    } catch (const std::exception&) {
      ++m.solver_failures;  // keep the previous command
    }

    const double theta_new = slalom::wrap_angle(pose.theta + w_cmd * dt);
    pose = slalom::Pose2(pose.x + v_cmd * dt * std::cos(theta_new),
                         pose.y + v_cmd * dt * std::sin(theta_new), theta_new);

    const slalom::Velocity2 vel = slalom::fd_velocity(pose, hist1, dt);
    const slalom::Accel2 acc = slalom::fd_acceleration(pose, hist1, hist2, dt);
    const double speed = std::hypot(vel.xd, vel.yd);
    const double sp_err = speed - params.v_desired;
    const double step_cost =
        params.w_acc * (acc.xdd * acc.xdd + acc.ydd * acc.ydd + acc.thetadd * acc.thetadd) +
        params.w_center * pose.y * pose.y + params.w_speed * sp_err * sp_err;
    cost_sum += step_cost;
    speed_sum += speed;
    hist2 = hist1;
    hist1 = pose;

    for (const Obstacle& o : scene.obstacles) {
      if (!o.real) continue;
      if (std::hypot(pose.x - o.x, pose.y - o.y) < o.radius &&
          collided.insert(o.id).second) {
        ++m.collision_count;
      }
    }
    if (violated) ++m.violation_count;

    if (trace) {
      trace->rows.push_back({now, pose.x, pose.y, pose.theta, v_cmd, w_cmd, step_cost});
    }
  }

  m.cycles = cycles;
  m.avg_cost = cycles > 0 ? cost_sum / cycles : 0.0;
  m.avg_speed = cycles > 0 ? speed_sum / cycles : 0.0;
  if (!timer.samples.empty()) {
    double s = 0.0;
    for (double x : timer.samples) s += x;
    m.mean_plan_ms = s / timer.samples.size();
    m.p95_plan_ms = percentile95(timer.samples);
  }
  return m;
}

}  // namespace

ControllerSpec ControllerSpec::parse(const std::string& name) {
  ControllerSpec spec;
  if (name == "tree") {
    spec.kind = ControllerKind::kTree;
    spec.cap = 0;
    return spec;
  }
  if (name.rfind("tree-", 0) == 0) {
    spec.kind = ControllerKind::kTree;
    spec.cap = std::stoi(name.substr(5));
    if (spec.cap < 2) throw std::invalid_argument("controller: tree cap must be >= 2");
    return spec;
  }
  if (name == "single" || name == "single-hyp" || name == "baseline") {
    spec.kind = ControllerKind::kBaseline;
    return spec;
  }
  if (name == "oracle") {
    spec.kind = ControllerKind::kOracle;
    return spec;
  }
  throw std::invalid_argument("controller: unknown name '" + name + "'");
}

std::string ControllerSpec::name() const {
  switch (kind) {
    case ControllerKind::kTree:
      return cap > 0 ? "tree-" + std::to_string(cap) : "tree";
    case ControllerKind::kBaseline:
      return "single";
    case ControllerKind::kOracle:
      return "oracle";
  }
  return "?";
}

EpisodeMetrics run_episode(const ScenarioConfig& cfg, const ControllerSpec& controller,
                           int workers, EpisodeTrace* trace) {
  cfg.validate();
  return cfg.kind == ScenarioKind::kPedestrianAcc
             ? run_acc_episode(cfg, controller, workers, trace)
             : run_slalom_episode(cfg, controller, workers, trace);
}

}  // namespace ctrees::sim
