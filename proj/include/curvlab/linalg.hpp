#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace curvlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Relative tolerance used when a caller does not supply one.
inline constexpr double kDefaultTol = 1e-9;

/// Orthonormal basis of a subspace of R^d, stored as the columns of a d x k matrix.
class Subspace {
 public:
  /// Throws NonOrthonormalBasis unless basisᵀ·basis = Id within 1e-10.
  explicit Subspace(Matrix basis);

  static Subspace zero(int ambient_dim);
  static Subspace whole(int ambient_dim);

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }
  Vector vector(int i) const { return basis_.col(i); }

 private:
  Matrix basis_;
};

class SkewEndomorphism {
 public:
  /// Throws NotSkew unless matrix + matrixᵀ = 0 within 1e-12 entrywise.
  explicit SkewEndomorphism(Matrix matrix);

  static SkewEndomorphism zero(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }
  Vector apply(const Vector& v) const { return matrix_ * v; }
  bool is_zero() const { return matrix_.cwiseAbs().maxCoeff() == 0.0; }

 private:
  Matrix matrix_;
};

/// Orthogonal J with J² = -Id on an even-dimensional space.
class ComplexStructure {
 public:
  explicit ComplexStructure(Matrix matrix);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }
  Vector apply(const Vector& v) const { return matrix_ * v; }

 private:
  Matrix matrix_;
};

class SymmetricOperator {
 public:
  /// Checks symmetry relative to max(1, max|entry|) at 1e-10, then stores the
  /// exact symmetric part.
  explicit SymmetricOperator(const Matrix& matrix);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }

 private:
  Matrix matrix_;
};

struct Spectrum {
  Vector values;   // ascending
  Matrix vectors;  // column i pairs with values(i)
};

ComplexStructure standard_complex_structure(int d);

SymmetricOperator projector(const Subspace& w);

/// Eigen-decomposition with ascending eigenvalues and eigenvectors whose
/// first nonzero coordinate is positive.
Spectrum symmetric_spectrum(const SymmetricOperator& s);
Spectrum symmetric_spectrum(const Matrix& s);

/// Number of singular values above tol * max(1, largest singular value).
int rank_with_tol(const Matrix& m, double tol);

/// n unit vectors; the first min(n, d) are e_1, e_2, ... and the rest are
/// normalized Gaussian draws from a seeded mt19937_64.
std::vector<Vector> unit_sphere_samples(int d, int n, std::uint64_t seed);

SkewEndomorphism random_skew(int d, std::uint64_t seed);

/// Flips v so that its first coordinate with |x| > cutoff is positive.
void canonicalize_sign(Eigen::Ref<Vector> v, double cutoff = 0.0);

/// Orthonormal basis of the orthogonal complement of the column span of `spanning`
/// (columns need not be orthonormal); numerical rank at `tol`.
Subspace orthogonal_complement(const Matrix& spanning, int ambient_dim, double tol = kDefaultTol);

/// Orthonormal basis of the column span of `spanning`, numerical rank at `tol`.
Subspace column_span(const Matrix& spanning, double tol = kDefaultTol);

/// Largest principal angle between two subspaces; pi/2 when dimensions differ.
double largest_principal_angle(const Subspace& a, const Subspace& b);

/// Angle between the lines spanned by two nonzero matrices (Frobenius inner product).
double projective_angle(const Matrix& a, const Matrix& b);

/// J∘(mu_1 π^{W_1} + mu_2 π^{W_2} + ...), W_k = span(e_{2k-1}, e_{2k}); missing
/// trailing blocks are zero.
SkewEndomorphism block_skew(int d, const std::vector<double>& mus);

/// Max-norm of a matrix (largest absolute entry).
inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace curvlab
