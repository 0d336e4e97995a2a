#pragma once

#include <cstdint>
#include <vector>

#include "curvlab/linalg.hpp"

namespace curvlab {

struct DistributionEntry {
  Vector s;                     // unit
  std::vector<Vector> tangents;  // unit, orthogonal to s
};

/// Sampled subspaces of a distribution on the unit sphere. Tangents are
/// normalized on construction.
class DistributionSamples {
 public:
  DistributionSamples(int dim, std::vector<DistributionEntry> entries);

  int dim() const { return dim_; }
  const std::vector<DistributionEntry>& entries() const { return entries_; }

 private:
  int dim_;
  std::vector<DistributionEntry> entries_;
};

struct FitResult {
  SkewEndomorphism a;  // |A|_F = 1
  double residual;     // minimized quadratic form
  double gap;          // second-smallest minus smallest eigenvalue of the form
};

struct TangencyProfile {
  double max_abs;
  double min_abs;
};

/// span(s, As)⊥; all of s⊥ where As vanishes.
Subspace distribution_at(const SkewEndomorphism& a, const Vector& s, double tol = kDefaultTol);

/// |<c'(t), A c(t)>| along the great circle c(t) = cos(t) s + sin(t) w.
TangencyProfile tangency_profile(const SkewEndomorphism& a, const Vector& s, const Vector& w,
                                 const std::vector<double>& times);

/// Least eigenvector of Q(A) = Σ <t, A s>² over unit-Frobenius skew A.
FitResult fit_skew_from_samples(const DistributionSamples& samples);

/// Largest principal angle between D[A]_s, s = cos(T) k + sin(T) m, and the
/// three-summand decomposition (k⊥ ∩ K) ⊕ (D_m ∩ T_m S_M) ⊕ span(-sin(T) k + cos(T) m).
double sphere_structure_check(const SkewEndomorphism& a, const Vector& k, const Vector& m, double t,
                              double tol = kDefaultTol);

/// Entries sampled from D[A]: n seeded sphere points, each with an orthonormal basis of D[A]_s.
DistributionSamples sample_distribution(const SkewEndomorphism& a, int n, std::uint64_t seed);

/// Kernel of A as an orthonormal basis.
Subspace kernel_of(const SkewEndomorphism& a, double tol = kDefaultTol);

/// Coordinates of A in the orthonormal basis (e_a e_bᵀ - e_b e_aᵀ)/√2, a < b.
Vector skew_coordinates(const Matrix& a);
Matrix skew_from_coordinates(const Vector& coords, int d);

}  // namespace curvlab
