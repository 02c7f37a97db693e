#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "ctrees/acc/model.hpp"
#include "ctrees/horizon.hpp"
#include "ctrees/slalom/planner.hpp"
#include "ctrees/solver/config.hpp"
#include "ctrees/util/config_file.hpp"

namespace ctrees::sim {

enum class ScenarioKind { kPedestrianAcc, kSlalom };

struct ScenarioConfig {
  std::uint64_t seed = 1;
  double duration = 60.0;      // simulated seconds
  double control_rate = 10.0;  // planning/actuation Hz
  ScenarioKind kind = ScenarioKind::kPedestrianAcc;

  // Pedestrian scenario.
  double pedestrian_density = 20.0;  // per km
  double crossing_fraction = 0.05;   // ground-truth crossing probability
  double crossing_duration = 4.0;    // s in the lane once crossing

  // Slalom scenario.
  double obstacle_spacing = 17.0;        // mean m between potential obstacles
  double false_positive_fraction = 0.9;  // detections that are not real
  double obstacle_radius = 1.0;          // m
  double lateral_spread = 1.0;           // obstacle |y| <= spread

  // Perception: entities resolve when the agent is closer than the entity's
  // reveal distance ~ U[reveal_min, reveal_max]; before that the belief ramps
  // from the prior toward the truth over perception_ramp meters, up to
  // ramp_max_weight.
  double reveal_min = 5.0;
  double reveal_max = 25.0;
  double perception_ramp = 20.0;
  double ramp_max_weight = 0.8;

  HorizonSpec horizon{4, 20, 0.25};
  acc::AccCostParams acc_params;
  slalom::SlalomCostParams slalom_params;
  dal::SolverConfig solver;

  void validate() const {
    if (!(duration > 0)) throw std::invalid_argument("scenario: duration > 0");
    if (!(control_rate > 0)) throw std::invalid_argument("scenario: control_rate > 0");
    if (crossing_fraction < 0 || crossing_fraction > 1 ||
        false_positive_fraction < 0 || false_positive_fraction > 1) {
      throw std::invalid_argument("scenario: fractions in [0, 1]");
    }
    if (pedestrian_density < 0) throw std::invalid_argument("scenario: density >= 0");
    if (!(obstacle_spacing > 0)) throw std::invalid_argument("scenario: spacing > 0");
    if (!(reveal_min > 0 && reveal_max >= reveal_min)) {
      throw std::invalid_argument("scenario: reveal distances");
    }
    acc_params.validate();
    slalom_params.validate();
    solver.validate();
  }

  // Pedestrians are planned for inside a fixed window ahead: the stopping
  // envelope evaluated at the desired speed.
  double acc_window() const {
    const double v = acc_params.v_desired;
    return std::max(v * horizon.horizon_seconds() - v * v / (2.0 * -acc_params.u_min),
                    4.0 * acc_params.d_safety);
  }
  double slalom_window() const {
    return slalom_params.v_desired * horizon.horizon_seconds();
  }

  static ScenarioConfig from_config(const ConfigFile& cfg);
  static ScenarioConfig from_file(const std::string& path);
};

}  // namespace ctrees::sim
