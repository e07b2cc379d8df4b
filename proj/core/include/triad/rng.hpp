#pragma once

#include <cstdint>

#include "triad/tensor.hpp"

namespace triad {

/// Counter-based SplitMix64 stream. Output depends only on (seed, counter),
/// so sequences are identical on every platform. Normal deviates use the
/// Box-Muller transform on this stream rather than <random> distributions,
/// whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, n).
  int uniform_int(int n);
  double normal();
  /// (x + iy)/sqrt(2) with x, y standard normal.
  Complex complex_normal();

  /// Independent stream keyed by (seed, stream).
  Rng fork(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

Matrix gaussian_matrix(Rng& rng, int rows, int cols);
/// Haar-distributed unitary via QR of a Ginibre matrix with the diagonal
/// phase correction.
Matrix random_unitary(Rng& rng, int k);

}  // namespace triad
