#pragma once

// Seeded randomness for Monte Carlo runs and randomized instances.
//
// The generator family is std::mt19937_64, whose output sequence is fixed by
// the standard. Uniform and normal variates are derived from the raw 64-bit
// output here (53-bit mantissa uniforms, Box-Muller normals) rather than via
// the <random> distributions, whose algorithms vary between standard library
// implementations. Per-run sub-seeds come from a SplitMix64 mix of the base
// seed and the run index.

#include <cstddef>
#include <cstdint>
#include <random>

#include "twobc/hilbert.hpp"

namespace twobc {

/// SplitMix64 finalizer applied to seed + stream * golden-ratio increment.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-random unit vector in C^dim.
StateVector random_state(std::size_t dim, Rng& rng);

/// Haar-random unitary (QR of a complex Ginibre matrix with phase correction).
UnitaryOperator random_unitary(std::size_t dim, Rng& rng);

/// Full-rank random density operator G G^dagger / Tr(G G^dagger).
DensityOperator random_density(std::size_t dim, Rng& rng);

}  // namespace twobc
