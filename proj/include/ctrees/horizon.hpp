#pragma once

#include <stdexcept>

namespace ctrees {

// Planning horizon: a common trunk of trunk_steps steps shared by all
// branches, followed by per-branch steps up to total_steps.
struct HorizonSpec {
  int trunk_steps = 4;   // L, steps executed before the next planning cycle
  int total_steps = 20;  // T, steps per branch
  double dt = 0.25;      // seconds per step

  HorizonSpec() = default;
  HorizonSpec(int L, int T, double step_dt)
      : trunk_steps(L), total_steps(T), dt(step_dt) {
    if (L < 1 || L >= T) {
      throw std::invalid_argument("HorizonSpec: need 1 <= trunk_steps < total_steps");
    }
    if (!(step_dt > 0.0)) {
      throw std::invalid_argument("HorizonSpec: dt must be positive");
    }
  }

  double horizon_seconds() const { return total_steps * dt; }
  double trunk_seconds() const { return trunk_steps * dt; }
};

}  // namespace ctrees
