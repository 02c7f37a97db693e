#include "ctrees/sim/scenario.hpp"

namespace ctrees::sim {

ScenarioConfig ScenarioConfig::from_config(const ConfigFile& cfg) {
  ScenarioConfig out;
  const std::string kind = cfg.get_string("kind", "pedestrian-acc");
  if (kind == "pedestrian-acc") {
    out.kind = ScenarioKind::kPedestrianAcc;
  } else if (kind == "slalom") {
    out.kind = ScenarioKind::kSlalom;
  } else {
    throw std::runtime_error("scenario: unknown kind '" + kind + "'");
  }
  out.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  out.duration = cfg.get_double("duration", out.duration);
  out.control_rate = cfg.get_double("control_rate", out.control_rate);

  out.pedestrian_density = cfg.get_double("pedestrian_density", out.pedestrian_density);
  out.crossing_fraction = cfg.get_double("crossing_fraction", out.crossing_fraction);
  out.crossing_duration = cfg.get_double("crossing_duration", out.crossing_duration);

  out.obstacle_spacing = cfg.get_double("obstacle_spacing", out.obstacle_spacing);
  out.false_positive_fraction =
      cfg.get_double("false_positive_fraction", out.false_positive_fraction);
  out.obstacle_radius = cfg.get_double("obstacle_radius", out.obstacle_radius);
  out.lateral_spread = cfg.get_double("lateral_spread", out.lateral_spread);

  out.reveal_min = cfg.get_double("reveal_min", out.reveal_min);
  out.reveal_max = cfg.get_double("reveal_max", out.reveal_max);
  out.perception_ramp = cfg.get_double("perception_ramp", out.perception_ramp);
  out.ramp_max_weight = cfg.get_double("ramp_max_weight", out.ramp_max_weight);

  out.horizon = HorizonSpec(static_cast<int>(cfg.get_int("trunk_steps", 4)),
                            static_cast<int>(cfg.get_int("total_steps", 20)),
                            cfg.get_double("dt", 0.25));

  out.acc_params.k_v = cfg.get_double("k_v", out.acc_params.k_v);
  out.acc_params.k_u = cfg.get_double("k_u", out.acc_params.k_u);
  out.acc_params.v_desired = cfg.get_double("v_desired", out.acc_params.v_desired);
  out.acc_params.d_safety = cfg.get_double("d_safety", out.acc_params.d_safety);
  out.acc_params.u_min = cfg.get_double("u_min", out.acc_params.u_min);
  out.acc_params.u_max = cfg.get_double("u_max", out.acc_params.u_max);

  out.slalom_params.w_acc = cfg.get_double("w_acc", out.slalom_params.w_acc);
  out.slalom_params.w_center = cfg.get_double("w_center", out.slalom_params.w_center);
  out.slalom_params.w_speed = cfg.get_double("w_speed", out.slalom_params.w_speed);
  out.slalom_params.v_desired =
      cfg.get_double("slalom_v_desired", out.slalom_params.v_desired);
  out.slalom_params.d_avoid = cfg.get_double("d_avoid", out.slalom_params.d_avoid);
  out.slalom_params.literal_nonholonomic =
      cfg.get_bool("literal_nonholonomic", out.slalom_params.literal_nonholonomic);

  dal::SolverConfig solver_base;
  if (out.kind == ScenarioKind::kSlalom) solver_base = slalom::default_solver_config();
  out.solver = dal::SolverConfig::from_config(cfg, "solver.", solver_base);
  out.validate();
  return out;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
  return from_config(ConfigFile::parse_file(path));
}

}  // namespace ctrees::sim
