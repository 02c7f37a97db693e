#include "ctrees/sim/scene.hpp"

#include <algorithm>
#include <cmath>

#include "ctrees/util/rng.hpp"

namespace ctrees::sim {

namespace {
constexpr double kSpawnStart = 30.0;  // m of clear road at episode start
}

Scene generate_scene(const ScenarioConfig& cfg) {
  cfg.validate();
  Scene scene;
  const double cruise = cfg.kind == ScenarioKind::kPedestrianAcc
                            ? cfg.acc_params.v_desired
                            : cfg.slalom_params.v_desired;
  scene.road_length = cruise * cfg.duration * 1.2 + 200.0;

  if (cfg.kind == ScenarioKind::kPedestrianAcc) {
    Rng rng(cfg.seed);
    if (cfg.pedestrian_density > 0) {
      const double mean_gap = 1000.0 / cfg.pedestrian_density;
      double x = kSpawnStart;
      int id = 0;
      while (true) {
        x += rng.exponential(mean_gap);
        if (x > scene.road_length) break;
        Pedestrian p;
        p.id = id++;
        p.position = x;
        p.will_cross = rng.bernoulli(cfg.crossing_fraction);
        p.reveal_distance = rng.uniform(cfg.reveal_min, cfg.reveal_max);
        scene.pedestrians.push_back(p);
      }
    }
  } else {
    Rng rng(cfg.seed ^ 0x5a5a5a5a5a5a5a5aULL);
    double x = kSpawnStart;
    int id = 0;
    while (true) {
      x += rng.exponential(cfg.obstacle_spacing);
      if (x > scene.road_length) break;
      Obstacle o;
      o.id = id++;
      o.x = x;
      o.y = rng.uniform(-cfg.lateral_spread, cfg.lateral_spread);
      o.radius = cfg.obstacle_radius;
      o.real = rng.bernoulli(1.0 - cfg.false_positive_fraction);
      o.reveal_distance = rng.uniform(cfg.reveal_min, cfg.reveal_max);
      scene.obstacles.push_back(o);
    }
  }
  return scene;
}

PerceptionSim::PerceptionSim(const Scene& scene, const ScenarioConfig& cfg)
    : scene_(scene), cfg_(cfg) {
  ped_phase_.assign(scene.pedestrians.size(), Phase::kUnresolved);
  ped_resolve_time_.assign(scene.pedestrians.size(), 0.0);
  obs_phase_.assign(scene.obstacles.size(), Phase::kUnresolved);
}

void PerceptionSim::update(double agent_x, double now) {
  for (size_t i = 0; i < scene_.pedestrians.size(); ++i) {
    const Pedestrian& p = scene_.pedestrians[i];
    if (ped_phase_[i] == Phase::kUnresolved &&
        p.position - agent_x <= p.reveal_distance) {
      if (p.will_cross) {
        ped_phase_[i] = Phase::kOccupying;
        ped_resolve_time_[i] = now;
      } else {
        ped_phase_[i] = Phase::kGone;
      }
    }
    if (ped_phase_[i] == Phase::kOccupying &&
        now - ped_resolve_time_[i] >= cfg_.crossing_duration) {
      ped_phase_[i] = Phase::kGone;  // finished crossing, lane clear
    }
  }
  for (size_t i = 0; i < scene_.obstacles.size(); ++i) {
    const Obstacle& o = scene_.obstacles[i];
    if (obs_phase_[i] == Phase::kUnresolved && o.x - agent_x <= o.reveal_distance) {
      obs_phase_[i] = o.real ? Phase::kPresent : Phase::kGone;
    }
  }
}

std::vector<acc::PedestrianObs> PerceptionSim::pedestrian_observations(
    double agent_x) const {
  std::vector<acc::PedestrianObs> out;
  for (size_t i = 0; i < scene_.pedestrians.size(); ++i) {
    const Pedestrian& p = scene_.pedestrians[i];
    if (ped_phase_[i] == Phase::kGone) continue;
    acc::PedestrianObs obs;
    obs.id = p.id;
    obs.position = p.position;
    if (ped_phase_[i] == Phase::kOccupying) {
      obs.crossing_prob = 1.0;
      obs.resolved = acc::Resolution::kCrossing;
    } else {
      const double d = p.position - agent_x;
      const double ramp_start = p.reveal_distance + cfg_.perception_ramp;
      const double w =
          std::clamp((ramp_start - d) / cfg_.perception_ramp, 0.0, 1.0) *
          cfg_.ramp_max_weight;
      const double truth = p.will_cross ? 1.0 : 0.0;
      obs.crossing_prob = (1.0 - w) * cfg_.crossing_fraction + w * truth;
      obs.resolved = acc::Resolution::kUncertain;
    }
    out.push_back(obs);
  }
  return out;
}

std::vector<slalom::ObstacleHyp> PerceptionSim::obstacle_observations(
    double agent_x) const {
  std::vector<slalom::ObstacleHyp> out;
  for (size_t i = 0; i < scene_.obstacles.size(); ++i) {
    const Obstacle& o = scene_.obstacles[i];
    if (obs_phase_[i] == Phase::kGone) continue;
    slalom::ObstacleHyp hyp;
    hyp.id = o.id;
    hyp.cx = o.x;
    hyp.cy = o.y;
    hyp.radius = o.radius;
    if (obs_phase_[i] == Phase::kPresent) {
      hyp.existence_prob = 1.0;
      hyp.resolved = slalom::Presence::kPresent;
    } else {
      const double d = o.x - agent_x;
      const double prior = 1.0 - cfg_.false_positive_fraction;
      const double ramp_start = o.reveal_distance + cfg_.perception_ramp;
      const double w =
          std::clamp((ramp_start - d) / cfg_.perception_ramp, 0.0, 1.0) *
          cfg_.ramp_max_weight;
      const double truth = o.real ? 1.0 : 0.0;
      hyp.existence_prob = (1.0 - w) * prior + w * truth;
      hyp.resolved = slalom::Presence::kUncertain;
    }
    out.push_back(hyp);
  }
  return out;
}

}  // namespace ctrees::sim
