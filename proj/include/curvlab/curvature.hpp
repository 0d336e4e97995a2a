#pragma once

#include <array>
#include <optional>
#include <vector>

#include "curvlab/linalg.hpp"

namespace curvlab {

/// Components R[i][j][k][l] = <R(e_i, e_j) e_k, e_l> in the standard basis,
/// stored densely in row-major order.
class CurvatureTensor {
 public:
  explicit CurvatureTensor(int dim);
  CurvatureTensor(int dim, std::vector<double> components);

  int dim() const { return dim_; }
  const std::vector<double>& components() const { return c_; }

  double operator()(int i, int j, int k, int l) const { return c_[index(i, j, k, l)]; }
  double& operator()(int i, int j, int k, int l) { return c_[index(i, j, k, l)]; }

  /// R(x, y) z.
  Vector apply(const Vector& x, const Vector& y, const Vector& z) const;
  /// <R(x, y) z, w>.
  double form(const Vector& x, const Vector& y, const Vector& z, const Vector& w) const;

  double max_abs() const;
  double frobenius_norm() const;

  CurvatureTensor& operator+=(const CurvatureTensor& other);
  CurvatureTensor& operator-=(const CurvatureTensor& other);
  CurvatureTensor& operator*=(double s);

 private:
  std::size_t index(int i, int j, int k, int l) const {
    const auto d = static_cast<std::size_t>(dim_);
    return ((static_cast<std::size_t>(i) * d + j) * d + k) * d + l;
  }

  int dim_;
  std::vector<double> c_;
};

CurvatureTensor operator+(CurvatureTensor a, const CurvatureTensor& b);
CurvatureTensor operator-(CurvatureTensor a, const CurvatureTensor& b);
CurvatureTensor operator*(double s, CurvatureTensor a);

struct SymmetryReport {
  double antisymmetry_residual = 0.0;
  double pair_exchange_residual = 0.0;
  double bianchi_residual = 0.0;
  std::optional<double> kahler_residual;

  /// Largest of the three curvature-symmetry residuals (Kähler excluded).
  double worst() const;
};

/// R_1(x,y)z = <y,z>x - <x,z>y.
CurvatureTensor build_R1(int d);

/// R_A(x,y)z = 2<x,Ay>Az + <x,Az>Ay - <y,Az>Ax.
CurvatureTensor build_RA(const SkewEndomorphism& a);

/// kappa * R_1 + tau * R_A with tau in {-1, 0, 1} and tau == 0 iff A == 0.
CurvatureTensor build_model(double kappa, int tau, const SkewEndomorphism& a);

SymmetryReport validate_symmetries(const CurvatureTensor& r,
                                   const std::optional<ComplexStructure>& j = std::nullopt);

/// The Jacobi operator w ↦ R(w, v) v as a full d x d matrix.
SymmetricOperator jacobi_operator(const CurvatureTensor& r, const Vector& v);

/// <R(v, w) w, v> for an orthonormal pair.
double sectional(const CurvatureTensor& r, const Vector& v, const Vector& w);

/// Ric(v, w) = trace(x ↦ R(x, v) w).
SymmetricOperator ricci(const CurvatureTensor& r);

/// {v : R(w, v) = 0 for all w}.
Subspace nullity_space(const CurvatureTensor& r, double tol = kDefaultTol);

double holomorphic_sectional(const CurvatureTensor& r, const ComplexStructure& j, const Vector& v);

/// (2/3)(kmax - kmin) - |<R(e1,e2)e3, e4>|; nonnegative when the mixed
/// curvature bound holds for the frame.
double berger_check(const CurvatureTensor& r, const std::array<Vector, 4>& frame, double kmin,
                    double kmax);

/// Throws NotUnit unless | |v| - 1 | <= 1e-12.
void require_unit(const Vector& v);
/// Throws NotOrthonormal unless the vectors are orthonormal within `tol`.
void require_orthonormal(const std::vector<Vector>& vs, double tol = 1e-10);

}  // namespace curvlab
