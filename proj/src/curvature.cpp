#include "curvlab/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "curvlab/error.hpp"

namespace curvlab {

namespace {

std::size_t pow4(int d) {
  const auto n = static_cast<std::size_t>(d);
  return n * n * n * n;
}

}  // namespace

CurvatureTensor::CurvatureTensor(int dim) : dim_(dim), c_(pow4(dim), 0.0) {
  if (dim < 1) throw Error(ErrorCode::DimensionMismatch, "dimension must be positive");
}

CurvatureTensor::CurvatureTensor(int dim, std::vector<double> components)
    : dim_(dim), c_(std::move(components)) {
  if (dim < 1) throw Error(ErrorCode::DimensionMismatch, "dimension must be positive");
  if (c_.size() != pow4(dim)) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(pow4(dim)) + " components, got " + std::to_string(c_.size()));
  }
}

Vector CurvatureTensor::apply(const Vector& x, const Vector& y, const Vector& z) const {
  Vector out = Vector::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      const double xy = x(i) * y(j);
      if (xy == 0.0) continue;
      for (int k = 0; k < dim_; ++k) {
        const double xyz = xy * z(k);
        if (xyz == 0.0) continue;
        for (int l = 0; l < dim_; ++l) out(l) += xyz * (*this)(i, j, k, l);
      }
    }
  }
  return out;
}

double CurvatureTensor::form(const Vector& x, const Vector& y, const Vector& z, const Vector& w) const {
  return apply(x, y, z).dot(w);
}

double CurvatureTensor::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

double CurvatureTensor::frobenius_norm() const {
  double s = 0.0;
  for (double v : c_) s += v * v;
  return std::sqrt(s);
}

CurvatureTensor& CurvatureTensor::operator+=(const CurvatureTensor& other) {
  if (other.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "tensor dimensions differ");
  for (std::size_t n = 0; n < c_.size(); ++n) c_[n] += other.c_[n];
  return *this;
}

CurvatureTensor& CurvatureTensor::operator-=(const CurvatureTensor& other) {
  if (other.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "tensor dimensions differ");
  for (std::size_t n = 0; n < c_.size(); ++n) c_[n] -= other.c_[n];
  return *this;
}

CurvatureTensor& CurvatureTensor::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

CurvatureTensor operator+(CurvatureTensor a, const CurvatureTensor& b) { return a += b; }
CurvatureTensor operator-(CurvatureTensor a, const CurvatureTensor& b) { return a -= b; }
CurvatureTensor operator*(double s, CurvatureTensor a) { return a *= s; }

double SymmetryReport::worst() const {
  return std::max({antisymmetry_residual, pair_exchange_residual, bianchi_residual});
}

void require_unit(const Vector& v) {
  if (std::abs(v.norm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::NotUnit, "norm = " + std::to_string(v.norm()));
  }
}

void require_orthonormal(const std::vector<Vector>& vs, double tol) {
  for (std::size_t a = 0; a < vs.size(); ++a) {
    for (std::size_t b = a; b < vs.size(); ++b) {
      const double expected = a == b ? 1.0 : 0.0;
      if (std::abs(vs[a].dot(vs[b]) - expected) > tol) {
        throw Error(ErrorCode::NotOrthonormal, "vectors " + std::to_string(a) + ", " +
                                                   std::to_string(b) + " fail the orthonormality check");
      }
    }
  }
}

CurvatureTensor build_R1(int d) {
  if (d < 2) throw Error(ErrorCode::DimensionMismatch, "d must be at least 2");
  CurvatureTensor r(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      // <R1(e_i,e_j)e_k, e_l> = δ_jk δ_il - δ_ik δ_jl
      r(i, j, j, i) = 1.0;
      r(i, j, i, j) = -1.0;
    }
  return r;
}

CurvatureTensor build_RA(const SkewEndomorphism& a) {
  const int d = a.dim();
  const Matrix& m = a.matrix();  // m(p, q) = <e_p, A e_q>
  CurvatureTensor r(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          r(i, j, k, l) = 2.0 * m(i, j) * m(l, k) + m(i, k) * m(l, j) - m(j, k) * m(l, i);
        }
  return r;
}

CurvatureTensor build_model(double kappa, int tau, const SkewEndomorphism& a) {
  if (tau < -1 || tau > 1) {
    throw Error(ErrorCode::ConventionViolation, "tau must be -1, 0 or 1");
  }
  if ((tau == 0) != a.is_zero()) {
    throw Error(ErrorCode::ConventionViolation, "tau = 0 exactly when A = 0");
  }
  CurvatureTensor r = kappa * build_R1(a.dim());
  if (tau != 0) r += static_cast<double>(tau) * build_RA(a);
  return r;
}

SymmetryReport validate_symmetries(const CurvatureTensor& r, const std::optional<ComplexStructure>& j) {
  const int d = r.dim();
  if (j && j->dim() != d) {
    throw Error(ErrorCode::DimensionMismatch, "J has dimension " + std::to_string(j->dim()) +
                                                  ", tensor has " + std::to_string(d));
  }
  SymmetryReport rep;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          const double v = r(a, b, c, e);
          rep.antisymmetry_residual = std::max(rep.antisymmetry_residual, std::abs(v + r(b, a, c, e)));
          rep.pair_exchange_residual = std::max(rep.pair_exchange_residual, std::abs(v - r(c, e, a, b)));
          rep.bianchi_residual =
              std::max(rep.bianchi_residual, std::abs(v + r(b, c, a, e) + r(c, a, b, e)));
        }

  if (j) {
    // T[a][b][k][l] = <R(J e_a, J e_b) e_k, e_l>, contracted one slot at a time.
    const Matrix& jm = j->matrix();
    CurvatureTensor half(d);
    for (int a = 0; a < d; ++a)
      for (int q = 0; q < d; ++q)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            double s = 0.0;
            for (int p = 0; p < d; ++p) s += jm(p, a) * r(p, q, k, l);
            half(a, q, k, l) = s;
          }
    double worst = 0.0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            double s = 0.0;
            for (int q = 0; q < d; ++q) s += jm(q, b) * half(a, q, k, l);
            worst = std::max(worst, std::abs(s - r(a, b, k, l)));
          }
    rep.kahler_residual = worst;
  }
  return rep;
}

SymmetricOperator jacobi_operator(const CurvatureTensor& r, const Vector& v) {
  require_unit(v);
  const int d = r.dim();
  if (v.size() != d) throw Error(ErrorCode::DimensionMismatch, "vector/tensor dimension mismatch");
  Matrix m = Matrix::Zero(d, d);
  // column i holds R(e_i, v) v
  for (int i = 0; i < d; ++i)
    for (int a = 0; a < d; ++a) {
      if (v(a) == 0.0) continue;
      for (int b = 0; b < d; ++b) {
        const double vv = v(a) * v(b);
        if (vv == 0.0) continue;
        for (int l = 0; l < d; ++l) m(l, i) += vv * r(i, a, b, l);
      }
    }
  return SymmetricOperator(m);
}

double sectional(const CurvatureTensor& r, const Vector& v, const Vector& w) {
  require_orthonormal({v, w});
  return r.form(v, w, w, v);
}

SymmetricOperator ricci(const CurvatureTensor& r) {
  const int d = r.dim();
  Matrix ric = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += r(k, i, j, k);
      ric(i, j) = s;
    }
  return SymmetricOperator(ric);
}

Subspace nullity_space(const CurvatureTensor& r, double tol) {
  const int d = r.dim();
  const int rows = d * d * d;
  Matrix m(rows, d);
  for (int v = 0; v < d; ++v) {
    int row = 0;
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) m(row++, v) = r(i, v, k, l);
  }
  const Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double cutoff = tol * std::max(1.0, sv(0));
  const auto rank = (sv.array() > cutoff).count();
  Matrix kernel = svd.matrixV().rightCols(d - rank);
  if (kernel.cols() > 0) {
    // re-orthonormalize deterministically inside the kernel
    return column_span(kernel, 1e-6);
  }
  return Subspace::zero(d);
}

double holomorphic_sectional(const CurvatureTensor& r, const ComplexStructure& j, const Vector& v) {
  require_unit(v);
  return sectional(r, v, j.apply(v));
}

double berger_check(const CurvatureTensor& r, const std::array<Vector, 4>& frame, double kmin,
                    double kmax) {
  require_orthonormal({frame[0], frame[1], frame[2], frame[3]});
  const double mixed = r.form(frame[0], frame[1], frame[2], frame[3]);
  return (2.0 / 3.0) * (kmax - kmin) - std::abs(mixed);
}

}  // namespace curvlab
