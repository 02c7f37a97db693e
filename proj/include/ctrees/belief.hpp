#pragma once

#include <vector>

namespace ctrees {

// Probability distribution over a finite discrete state space.
// Entries are in [0, 1] and sum to 1 within 1e-9.
class BeliefState {
 public:
  static constexpr double kSumTolerance = 1e-9;

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int s) const { return probs_[s]; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  friend BeliefState validate_belief(std::vector<double> probs);
  explicit BeliefState(std::vector<double> p) : probs_(std::move(p)) {}
  std::vector<double> probs_;
};

// Checks the distribution invariants and wraps the vector.
// Throws std::invalid_argument on empty input, entries outside [0, 1],
// or a sum deviating from 1 by more than 1e-9.
BeliefState validate_belief(std::vector<double> probs);

// Belief over "closest crossing pedestrian" for pedestrians sorted by
// increasing longitudinal position. State s < N is "pedestrian s is the
// closest one that crosses" with probability p_s * prod_{i<s} (1 - p_i);
// state N is "no pedestrian crosses". The last entry is the complement of
// the partial sum, so the distribution sums to 1 exactly.
BeliefState crossing_belief(const std::vector<double>& crossing_probs);

}  // namespace ctrees
