#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ctrees {

// mt19937_64 with hand-rolled transforms. The standard distributions are
// implementation-defined, so seeded streams would not reproduce across
// toolchains; these do.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return std::ldexp(static_cast<double>(engine_() >> 11), -53); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  // Exponential with given mean (> 0).
  double exponential(double mean) {
    double u = uniform();
    if (u <= 0.0) u = 5e-324;
    return -mean * std::log(u);
  }

  double normal(double mean = 0.0, double stddev = 1.0) {
    // Box-Muller, one draw per call pair; keep it stateless per call.
    double u1 = uniform();
    if (u1 <= 0.0) u1 = 5e-324;
    const double u2 = uniform();
    return mean + stddev * std::sqrt(-2.0 * std::log(u1)) *
                      std::cos(6.283185307179586476925286766559 * u2);
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ctrees
