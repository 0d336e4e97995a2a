#include "curvlab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "curvlab/curvature.hpp"
#include "curvlab/error.hpp"

namespace curvlab {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

DistributionSamples::DistributionSamples(int dim, std::vector<DistributionEntry> entries)
    : dim_(dim), entries_(std::move(entries)) {
  for (std::size_t n = 0; n < entries_.size(); ++n) {
    DistributionEntry& e = entries_[n];
    if (e.s.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "entry " + std::to_string(n));
    if (std::abs(e.s.norm() - 1.0) > 1e-10) {
      throw Error(ErrorCode::NotUnit, "entry " + std::to_string(n) + " point is not a unit vector");
    }
    for (Vector& t : e.tangents) {
      if (t.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "tangent in entry " + std::to_string(n));
      const double norm = t.norm();
      if (norm == 0.0) throw Error(ErrorCode::PreconditionViolated, "zero tangent in entry " + std::to_string(n));
      t /= norm;
      if (std::abs(t.dot(e.s)) > 1e-10) {
        throw Error(ErrorCode::NotOrthonormal, "tangent not orthogonal to s in entry " + std::to_string(n));
      }
    }
  }
}

Vector skew_coordinates(const Matrix& a) {
  const auto d = a.rows();
  Vector out(d * (d - 1) / 2);
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) out(p++) = (a(i, j) - a(j, i)) * kInvSqrt2;
  return out;
}

Matrix skew_from_coordinates(const Vector& coords, int d) {
  Matrix a = Matrix::Zero(d, d);
  Eigen::Index p = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      a(i, j) = coords(p) * kInvSqrt2;
      a(j, i) = -coords(p) * kInvSqrt2;
      ++p;
    }
  return a;
}

Subspace kernel_of(const SkewEndomorphism& a, double tol) {
  const int d = a.dim();
  const Eigen::JacobiSVD<Matrix> svd(a.matrix(), Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double cutoff = tol * std::max(1.0, sv(0));
  const auto rank = (sv.array() > cutoff).count();
  if (rank == d) return Subspace::zero(d);
  return column_span(svd.matrixV().rightCols(d - rank), 1e-6);
}

Subspace distribution_at(const SkewEndomorphism& a, const Vector& s, double tol) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroOperator, "D[A] needs A != 0");
  require_unit(s);
  const int d = a.dim();
  const Vector as = a.apply(s);
  if (as.norm() <= tol * std::max(1.0, a.matrix().norm())) {
    return orthogonal_complement(s, d);
  }
  Matrix span(d, 2);
  span.col(0) = s;
  span.col(1) = as;
  return orthogonal_complement(span, d);
}

TangencyProfile tangency_profile(const SkewEndomorphism& a, const Vector& s, const Vector& w,
                                 const std::vector<double>& times) {
  require_orthonormal({s, w});
  TangencyProfile out{0.0, times.empty() ? 0.0 : std::numeric_limits<double>::infinity()};
  for (double t : times) {
    const Vector c = std::cos(t) * s + std::sin(t) * w;
    const Vector dc = -std::sin(t) * s + std::cos(t) * w;
    const double v = std::abs(dc.dot(a.apply(c)));
    out.max_abs = std::max(out.max_abs, v);
    out.min_abs = std::min(out.min_abs, v);
  }
  return out;
}

FitResult fit_skew_from_samples(const DistributionSamples& samples) {
  const int d = samples.dim();
  const int n = d * (d - 1) / 2;
  Matrix form = Matrix::Zero(n, n);
  bool any = false;
  Vector g(n);
  for (const DistributionEntry& e : samples.entries()) {
    for (const Vector& t : e.tangents) {
      // g_p = <t, E_p s> with E_p = (e_a e_bᵀ - e_b e_aᵀ)/√2
      Eigen::Index p = 0;
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) g(p++) = (t(i) * e.s(j) - t(j) * e.s(i)) * kInvSqrt2;
      form.noalias() += g * g.transpose();
      any = true;
    }
  }
  if (!any) throw Error(ErrorCode::EmptySamples, "no tangent vectors supplied");

  const Spectrum sp = symmetric_spectrum(form);
  Matrix a = skew_from_coordinates(sp.vectors.col(0), d);
  // canonical representative of the projective class
  for (Eigen::Index i = 0; i < d; ++i) {
    bool done = false;
    for (Eigen::Index j = 0; j < d && !done; ++j) {
      if (std::abs(a(i, j)) > 1e-8) {
        if (a(i, j) < 0) a = -a;
        done = true;
      }
    }
    if (done) break;
  }
  const double residual = std::max(0.0, sp.values(0));
  const double gap = n > 1 ? std::max(0.0, sp.values(1) - sp.values(0)) : 0.0;
  return {SkewEndomorphism(a), residual, gap};
}

double sphere_structure_check(const SkewEndomorphism& a, const Vector& k, const Vector& m, double t, double tol) {
  constexpr double kHalfPi = 1.5707963267948966;
  const int d = a.dim();
  if (!(t > 0.0 && t < kHalfPi)) throw Error(ErrorCode::PreconditionViolated, "T must lie in (0, pi/2)");
  require_unit(k);
  require_unit(m);
  const double scale = std::max(1.0, a.matrix().norm());
  if (a.apply(k).norm() > 1e-10 * scale) {
    throw Error(ErrorCode::PreconditionViolated, "k is not in ker(A)");
  }
  const Subspace kernel = kernel_of(a, tol);
  if (kernel.dim() > 0 && (kernel.basis().transpose() * m).norm() > 1e-10) {
    throw Error(ErrorCode::PreconditionViolated, "m is not orthogonal to ker(A)");
  }

  const Vector s = std::cos(t) * k + std::sin(t) * m;
  const Subspace lhs = distribution_at(a, s, tol);

  // k⊥ ∩ K
  const Matrix kb = kernel.basis();
  const Matrix k_part = kb - k * (k.transpose() * kb);
  const Subspace first = column_span(k_part, 1e-8);
  // D_m ∩ T_m S_M = M ∩ span(m, Am)⊥
  const Matrix m_basis = orthogonal_complement(kb, d).basis();
  Matrix drop(d, 2);
  drop.col(0) = m;
  drop.col(1) = a.apply(m);
  const Subspace drop_span = column_span(drop, 1e-8);
  const Matrix second = m_basis - drop_span.basis() * (drop_span.basis().transpose() * m_basis);
  const Vector third = -std::sin(t) * k + std::cos(t) * m;

  Matrix all(d, first.dim() + second.cols() + 1);
  all << first.basis(), second, third;
  const Subspace rhs = column_span(all, 1e-8);
  return largest_principal_angle(lhs, rhs);
}

DistributionSamples sample_distribution(const SkewEndomorphism& a, int n, std::uint64_t seed) {
  std::vector<DistributionEntry> entries;
  for (const Vector& s : unit_sphere_samples(a.dim(), n, seed)) {
    const Subspace ds = distribution_at(a, s);
    DistributionEntry e{s, {}};
    for (int i = 0; i < ds.dim(); ++i) e.tangents.push_back(ds.vector(i));
    entries.push_back(std::move(e));
  }
  return DistributionSamples(a.dim(), std::move(entries));
}

}  // namespace curvlab
