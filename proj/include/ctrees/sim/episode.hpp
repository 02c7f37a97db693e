#pragma once

#include <string>
#include <vector>

#include "ctrees/sim/scene.hpp"

namespace ctrees::sim {

enum class ControllerKind { kTree, kBaseline, kOracle };

struct ControllerSpec {
  ControllerKind kind = ControllerKind::kTree;
  int cap = 0;  // branch-count cap for capped trees, 0 = full

  // "tree", "tree-N", "single", "oracle".
  static ControllerSpec parse(const std::string& name);
  std::string name() const;
};

struct EpisodeMetrics {
  double avg_cost = 0.0;       // realized cost per executed control cycle
  double avg_speed = 0.0;      // m/s
  double mean_plan_ms = 0.0;   // wall time, excluded from determinism
  double p95_plan_ms = 0.0;
  long violation_count = 0;    // union of the three breakdown counters below
  long collision_count = 0;
  long solver_failures = 0;
  long cycles = 0;
  // Violation breakdown.
  long nonconverged_cycles = 0;  // final AuLa primal residual > 10 eps_pri
  long soft_stop_cycles = 0;     // emergency-softened stop active
  long overshoot_count = 0;      // plant crossed an active stop line / hit margin
};

// Per-cycle trace for plotting; header depends on the scenario kind.
struct EpisodeTrace {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Closed loop: plant stepped at control_rate, first trunk command executed,
// re-planned every cycle. The plant matches the planner model exactly
// (Eq.-style integrator for the pedestrian scenario with speed clamped at 0,
// no-slip unicycle for the slalom). Controller failures keep the previous
// command and are counted.
EpisodeMetrics run_episode(const ScenarioConfig& cfg, const ControllerSpec& controller,
                           int workers = 1, EpisodeTrace* trace = nullptr);

}  // namespace ctrees::sim
