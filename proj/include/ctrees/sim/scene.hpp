#pragma once

#include <vector>

#include "ctrees/acc/model.hpp"
#include "ctrees/sim/scenario.hpp"
#include "ctrees/slalom/types.hpp"

namespace ctrees::sim {

struct Pedestrian {
  int id;
  double position;         // m along the road
  bool will_cross;         // ground truth
  double reveal_distance;  // m at which the intention resolves
};

struct Obstacle {
  int id;
  double x;
  double y;
  double radius;
  bool real;               // ground truth
  double reveal_distance;  // m (longitudinal) at which existence resolves
};

// Ground-truth entity stream, fully determined by the seed.
struct Scene {
  std::vector<Pedestrian> pedestrians;
  std::vector<Obstacle> obstacles;
  double road_length = 0.0;
};

Scene generate_scene(const ScenarioConfig& cfg);

// Latched perception state: entities resolve when the agent comes within
// their reveal distance, and the belief ramps monotonically toward the truth
// on approach. Crossing pedestrians occupy the lane for crossing_duration
// seconds, then clear.
class PerceptionSim {
 public:
  enum class Phase { kUnresolved, kOccupying, kPresent, kGone };

  PerceptionSim(const Scene& scene, const ScenarioConfig& cfg);

  // Advances latches; call once per cycle with the agent's longitudinal
  // position and the simulation time.
  void update(double agent_x, double now);

  // Belief observations for the planner (entities resolved away are absent).
  std::vector<acc::PedestrianObs> pedestrian_observations(double agent_x) const;
  std::vector<slalom::ObstacleHyp> obstacle_observations(double agent_x) const;

  Phase pedestrian_phase(int id) const { return ped_phase_[id]; }
  Phase obstacle_phase(int id) const { return obs_phase_[id]; }
  const Scene& scene() const { return scene_; }

 private:
  const Scene& scene_;
  const ScenarioConfig& cfg_;
  std::vector<Phase> ped_phase_;
  std::vector<double> ped_resolve_time_;
  std::vector<Phase> obs_phase_;
};

}  // namespace ctrees::sim
