#include "ctrees/belief.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ctrees {

BeliefState validate_belief(std::vector<double> probs) {
  if (probs.empty()) {
    throw std::invalid_argument("belief: empty distribution");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw std::invalid_argument("belief: entry outside [0, 1]: " + std::to_string(p));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > BeliefState::kSumTolerance) {
    throw std::invalid_argument("belief: entries sum to " + std::to_string(sum));
  }
  return BeliefState(std::move(probs));
}

BeliefState crossing_belief(const std::vector<double>& crossing_probs) {
  std::vector<double> probs;
  probs.reserve(crossing_probs.size() + 1);
  double prefix = 1.0;  // prod_{i<s} (1 - p_i)
  double partial = 0.0;
  for (double p : crossing_probs) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw std::invalid_argument("crossing_belief: probability outside [0, 1]");
    }
    const double ps = p * prefix;
    probs.push_back(ps);
    partial += ps;
    prefix *= 1.0 - p;
  }
  // Free-road state: mathematically prod_i (1 - p_i); computed as the
  // complement of the fixed-order partial sum so the total is exactly 1.
  probs.push_back(std::fmax(0.0, 1.0 - partial));
  return validate_belief(std::move(probs));
}

}  // namespace ctrees
