#pragma once

#include <cstdint>
#include <random>

namespace swarmqp {

/// Mixes a base seed with stream coordinates (command, run index, pair index...)
/// into an independent 64-bit seed. SplitMix64 finalizer applied per coordinate.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

/// Single-owner random stream. All stochastic code takes one of these by
/// reference so that a seed fully determines a run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return uniform_(engine_); }
  double normal() { return normal_(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace swarmqp
