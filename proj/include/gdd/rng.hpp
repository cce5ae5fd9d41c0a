#pragma once

#include "gdd/linalg.hpp"

#include <cstdint>
#include <random>

namespace gdd {

/// Seedable generator for circular complex Gaussian draws.
///
/// Streams are derived from (master seed, tag, index) by SplitMix64 mixing, so
/// trial i of a Monte Carlo run sees the same numbers whatever thread runs it.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t master, std::uint64_t tag, std::uint64_t index);

  /// Standard circular complex Gaussian: real and imaginary parts N(0, 1/2).
  Complex complex_normal();

  /// rows x cols matrix of IID standard circular complex Gaussian entries.
  CMatrix complex_normal(Eigen::Index rows, Eigen::Index cols);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 0.70710678118654752440};
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace gdd
