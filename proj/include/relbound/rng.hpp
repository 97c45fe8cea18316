#pragma once

#include <cstdint>
#include <vector>

#include "relbound/matrix.hpp"

namespace relbound {

/// xoshiro256** seeded through splitmix64. Self-contained so instance streams
/// reproduce from a seed independently of the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  /// Standard normal (Box-Muller).
  double normal();
  cxd complex_normal();
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// n x n matrix of independent standard complex Gaussian entries.
Matrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols);

/// Haar-distributed unitary: QR of a complex Gaussian with the diagonal of R
/// normalized to positive real phases.
Matrix haar_unitary(Rng& rng, std::size_t n);

/// Random Hermitian with independent Gaussian entries, Frobenius-scale O(n).
Matrix gaussian_hermitian(Rng& rng, std::size_t n);

/// Fisher-Yates random permutation of 0..n-1.
std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n);

}  // namespace relbound
