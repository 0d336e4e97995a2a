#pragma once

#include <cstdint>
#include <random>

#include "curvlab/linalg.hpp"

namespace curvlab::gen {

/// Seeded source of random test instances.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::uint64_t next_seed() { return rng_(); }

  Vector gaussian(int d);
  Vector unit(int d);
  /// d x k matrix with orthonormal columns.
  Matrix orthonormal(int d, int k);
  /// Unit vector orthogonal to the columns of `basis` (orthonormal columns).
  Vector unit_orthogonal_to(const Matrix& basis);
  Subspace subspace(int d, int k) { return Subspace(orthonormal(d, k)); }

  /// Orthogonal d x d matrix commuting with the standard complex structure.
  Matrix unitary(int d);

  /// Skew A of rank d - kernel_dim (kernel_dim must have the parity of d) in a random basis.
  SkewEndomorphism skew_with_kernel(int d, int kernel_dim);

  /// Block-diagonal skew matrix with basis-aligned 2x2 blocks of random weight.
  SkewEndomorphism basis_blocks(int d, int zero_blocks = 0);

 private:
  std::mt19937_64 rng_;
};

}  // namespace curvlab::gen
