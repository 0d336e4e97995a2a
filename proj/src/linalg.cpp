#include "curvlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "curvlab/error.hpp"

namespace curvlab {

Subspace::Subspace(Matrix basis) : basis_(std::move(basis)) {
  if (basis_.cols() == 0) return;
  const Matrix gram = basis_.transpose() * basis_;
  const Matrix id = Matrix::Identity(basis_.cols(), basis_.cols());
  if (max_abs(gram - id) > 1e-10) {
    throw Error(ErrorCode::NonOrthonormalBasis,
                "Gram deviation " + std::to_string(max_abs(gram - id)));
  }
}

Subspace Subspace::zero(int ambient_dim) { return Subspace(Matrix(ambient_dim, 0)); }

Subspace Subspace::whole(int ambient_dim) {
  return Subspace(Matrix::Identity(ambient_dim, ambient_dim));
}

SkewEndomorphism::SkewEndomorphism(Matrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "skew endomorphism must be square");
  }
  if (max_abs(matrix_ + matrix_.transpose()) > 1e-12) {
    throw Error(ErrorCode::NotSkew,
                "max |A + Aᵀ| = " + std::to_string(max_abs(matrix_ + matrix_.transpose())));
  }
}

SkewEndomorphism SkewEndomorphism::zero(int dim) { return SkewEndomorphism(Matrix::Zero(dim, dim)); }

ComplexStructure::ComplexStructure(Matrix matrix) : matrix_(std::move(matrix)) {
  const auto n = matrix_.rows();
  if (n != matrix_.cols()) throw Error(ErrorCode::DimensionMismatch, "J must be square");
  if (n % 2 != 0) throw Error(ErrorCode::OddDimension, "complex structure needs even dimension");
  const Matrix id = Matrix::Identity(n, n);
  if (max_abs(matrix_.transpose() * matrix_ - id) > 1e-12) {
    throw Error(ErrorCode::PreconditionViolated, "J is not orthogonal");
  }
  if (max_abs(matrix_ * matrix_ + id) > 1e-12) {
    throw Error(ErrorCode::PreconditionViolated, "J² != -Id");
  }
}

SymmetricOperator::SymmetricOperator(const Matrix& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "symmetric operator must be square");
  }
  const double scale = std::max(1.0, max_abs(matrix));
  if (max_abs(matrix - matrix.transpose()) > 1e-10 * scale) {
    throw Error(ErrorCode::PreconditionViolated, "operator is not symmetric");
  }
  matrix_ = 0.5 * (matrix + matrix.transpose());
}

ComplexStructure standard_complex_structure(int d) {
  if (d < 2 || d % 2 != 0) {
    throw Error(ErrorCode::OddDimension, "d = " + std::to_string(d));
  }
  Matrix j = Matrix::Zero(d, d);
  for (int k = 0; k < d / 2; ++k) {
    j(2 * k + 1, 2 * k) = 1.0;   // J e_{2k-1} = e_{2k}
    j(2 * k, 2 * k + 1) = -1.0;  // J e_{2k} = -e_{2k-1}
  }
  return ComplexStructure(std::move(j));
}

SymmetricOperator projector(const Subspace& w) {
  return SymmetricOperator(w.basis() * w.basis().transpose());
}

void canonicalize_sign(Eigen::Ref<Vector> v, double cutoff) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > cutoff) {
      if (v(i) < 0) v = -v;
      return;
    }
  }
}

Spectrum symmetric_spectrum(const Matrix& s) {
  const Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (s + s.transpose()));
  Spectrum out{solver.eigenvalues(), solver.eigenvectors()};
  // Zero-ish leading coordinates would make the sign choice noise-dependent.
  for (Eigen::Index i = 0; i < out.vectors.cols(); ++i) {
    canonicalize_sign(out.vectors.col(i), 1e-12);
  }
  return out;
}

Spectrum symmetric_spectrum(const SymmetricOperator& s) { return symmetric_spectrum(s.matrix()); }

int rank_with_tol(const Matrix& m, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::NonPositiveTolerance, "tol must be positive");
  if (m.size() == 0) return 0;
  const Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& sv = svd.singularValues();
  const double cutoff = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  return static_cast<int>((sv.array() > cutoff).count());
}

std::vector<Vector> unit_sphere_samples(int d, int n, std::uint64_t seed) {
  std::vector<Vector> out;
  if (n <= 0) return out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < std::min(n, d); ++i) out.push_back(Vector::Unit(d, i));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  while (static_cast<int>(out.size()) < n) {
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = normal(rng);
    const double norm = v.norm();
    if (norm < 1e-6) continue;
    out.push_back(v / norm);
  }
  return out;
}

SkewEndomorphism random_skew(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = uniform(rng);
  return SkewEndomorphism(m - m.transpose());
}

Subspace column_span(const Matrix& spanning, double tol) {
  const auto d = spanning.rows();
  if (spanning.cols() == 0) return Subspace::zero(static_cast<int>(d));
  const Eigen::JacobiSVD<Matrix> svd(spanning, Eigen::ComputeThinU);
  const Vector& sv = svd.singularValues();
  const double cutoff = tol * std::max(1.0, sv(0));
  const auto r = (sv.array() > cutoff).count();
  Matrix basis = svd.matrixU().leftCols(r);
  for (Eigen::Index i = 0; i < r; ++i) canonicalize_sign(basis.col(i), 1e-12);
  return Subspace(std::move(basis));
}

Subspace orthogonal_complement(const Matrix& spanning, int ambient_dim, double tol) {
  const Subspace span = column_span(spanning.rows() == 0 ? Matrix(ambient_dim, 0) : spanning, tol);
  const Matrix residual = Matrix::Identity(ambient_dim, ambient_dim) - span.basis() * span.basis().transpose();
  // Eigenvalues of the complementary projector are 0 or 1.
  const Spectrum spec = symmetric_spectrum(residual);
  const int k = ambient_dim - span.dim();
  return Subspace(spec.vectors.rightCols(k));
}

double largest_principal_angle(const Subspace& a, const Subspace& b) {
  constexpr double kHalfPi = 1.5707963267948966;
  if (a.dim() != b.dim() || a.ambient_dim() != b.ambient_dim()) return kHalfPi;
  if (a.dim() == 0) return 0.0;
  // sin of the largest angle is the spectral norm of (I - P_b) Q_a.
  const Matrix off = a.basis() - b.basis() * (b.basis().transpose() * a.basis());
  const Eigen::JacobiSVD<Matrix> svd(off);
  const double s = std::min(1.0, svd.singularValues()(0));
  return std::asin(s);
}

double projective_angle(const Matrix& a, const Matrix& b) {
  const Matrix ua = a / a.norm();
  const Matrix ub = b / b.norm();
  const double chord = std::min((ua - ub).norm(), (ua + ub).norm());
  return 2.0 * std::asin(std::min(1.0, chord / 2.0));
}

SkewEndomorphism block_skew(int d, const std::vector<double>& mus) {
  if (static_cast<int>(mus.size()) > d / 2) {
    throw Error(ErrorCode::DimensionMismatch, "more blocks than d/2");
  }
  const ComplexStructure j = standard_complex_structure(d);
  Matrix weights = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < mus.size(); ++k) {
    weights(2 * k, 2 * k) = mus[k];
    weights(2 * k + 1, 2 * k + 1) = mus[k];
  }
  return SkewEndomorphism(j.matrix() * weights);
}

}  // namespace curvlab
