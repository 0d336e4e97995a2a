#include "curvlab/kahler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace curvlab {

namespace {

constexpr double kPlaneTol = 1e-8;

[[noreturn]] void violation(const std::string& what) { throw Error(ErrorCode::StructureViolation, what); }

Subspace span_of(const Matrix& vectors, Eigen::Index first, Eigen::Index count) {
  return column_span(vectors.middleCols(first, count), 1e-6);
}

}  // namespace

int case_number(const KahlerClass& k) { return static_cast<int>(k.index()) + 1; }

const char* to_string(CommuteType t) {
  switch (t) {
    case CommuteType::Commute: return "commute";
    case CommuteType::Anticommute: return "anticommute";
    case CommuteType::Neither: return "neither";
  }
  return "neither";
}

CommuteType commute_type(const SkewEndomorphism& a, const ComplexStructure& j, double tol) {
  if (a.dim() != j.dim()) throw Error(ErrorCode::DimensionMismatch, "A and J dimensions differ");
  const Matrix aj = a.matrix() * j.matrix();
  const Matrix ja = j.matrix() * a.matrix();
  const double bound = tol * a.matrix().norm();
  if ((aj - ja).norm() <= bound) return CommuteType::Commute;
  if ((aj + ja).norm() <= bound) return CommuteType::Anticommute;
  return CommuteType::Neither;
}

double j_invariance_defect(const Subspace& w, const ComplexStructure& j) {
  const Matrix p = projector(w).matrix();
  const auto d = p.rows();
  return max_abs((Matrix::Identity(d, d) - p) * j.matrix() * p);
}

BAnalysis analyze_b(const SkewEndomorphism& a, const ComplexStructure& j, double tol) {
  BAnalysis out{a.matrix() * j.matrix(), commute_type(a, j, tol), Vector(), {}};
  if (out.commute_type != CommuteType::Commute) return out;
  const Spectrum sp = symmetric_spectrum(out.b);
  out.eigenvalues = sp.values;
  const double width = tol * std::max(1.0, sp.values.cwiseAbs().maxCoeff());
  Eigen::Index start = 0;
  const auto n = sp.values.size();
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i == n || sp.values(i) - sp.values(i - 1) > width) {
      out.eigenplanes.push_back(span_of(sp.vectors, start, i - start));
      start = i;
    }
  }
  return out;
}

KahlerClass classify_kahler(const CurvatureTensor& r, const ComplexStructure& j, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::NonPositiveTolerance, "tol must be positive");
  const int d = r.dim();
  if (d % 2 != 0) throw Error(ErrorCode::OddDimension, "Kähler classification needs even d");
  const double scale = tensor_scale(r);
  const SymmetryReport sym = validate_symmetries(r, j);
  if (sym.worst() > tol * scale) {
    throw Error(ErrorCode::SymmetryViolation, "tensor fails the curvature symmetries");
  }
  if (*sym.kahler_residual >= tol * scale) {
    throw Error(ErrorCode::NotKahler, "Kähler residual " + std::to_string(*sym.kahler_residual));
  }

  const Decomposition dec = recover_decomposition(r, tol);
  const double kappa = dec.kappa;
  if (d == 2) return KahlerCase1{kappa};

  if (dec.tau == 0) {
    if (r.max_abs() > tol * scale) violation("tau = 0 with a nonzero tensor in dimension >= 4");
    return KahlerCase4{0.0, Subspace::zero(d)};
  }
  const int tau = dec.tau;

  const BAnalysis ba = analyze_b(dec.a, j, tol);
  if (ba.commute_type != CommuteType::Commute) {
    violation(std::string("A and J ") + to_string(ba.commute_type) + " instead of commuting");
  }
  for (const Subspace& plane : ba.eigenplanes) {
    if (j_invariance_defect(plane, j) > kPlaneTol) violation("B eigenspace is not J-invariant");
  }

  const Vector& beta = ba.eigenvalues;
  const double bscale = std::max(1.0, beta.cwiseAbs().maxCoeff());
  const double width = tol * bscale;
  const double ptol = tol * std::max({1.0, std::abs(kappa), bscale * bscale});

  if (std::abs(kappa) <= tol * scale) {
    // Range of A is the span of the nonzero B-eigenvectors.
    const Spectrum sp = symmetric_spectrum(ba.b);
    std::vector<Eigen::Index> range;
    for (Eigen::Index i = 0; i < beta.size(); ++i) {
      if (std::abs(beta(i)) > width) range.push_back(i);
    }
    if (range.size() != 2) {
      violation("range of A has dimension " + std::to_string(range.size()) + ", expected 2");
    }
    if (std::abs(beta(range[0]) - beta(range[1])) > width) violation("B is not scalar on range(A)");
    Matrix w(d, 2);
    w.col(0) = sp.vectors.col(range[0]);
    w.col(1) = sp.vectors.col(range[1]);
    Subspace plane = column_span(w, 1e-6);
    if (j_invariance_defect(plane, j) > kPlaneTol) violation("range of A is not a holomorphic plane");
    const double mu = -0.5 * (beta(range[0]) + beta(range[1]));
    return KahlerCase4{tau * mu * mu, std::move(plane)};
  }

  if (d >= 6) {
    const double mean_beta = beta.mean();
    if ((beta.array() - mean_beta).abs().maxCoeff() > width) violation("B is not a multiple of the identity");
    const double mu = -mean_beta;
    if (std::abs(mu * mu - kappa / tau) > ptol) violation("mu² differs from kappa / tau");
    return KahlerCase3{kappa, tau, std::abs(mu)};
  }

  // d == 4: two holomorphic eigenplanes.
  if (beta(1) - beta(0) > width || beta(3) - beta(2) > width) {
    violation("B eigenvalues do not pair into holomorphic planes");
  }
  const Spectrum sp = symmetric_spectrum(ba.b);
  double mu_low = -0.5 * (beta(0) + beta(1));   // plane of the two smallest B-eigenvalues
  double mu_high = -0.5 * (beta(2) + beta(3));
  if (std::abs(mu_low * mu_high - kappa / tau) > ptol) violation("mu1 mu2 differs from kappa / tau");
  if (std::abs(mu_low - mu_high) <= width) {
    return KahlerCase3{kappa, tau, std::abs(0.5 * (mu_low + mu_high))};
  }
  Subspace low = span_of(sp.vectors, 0, 2);
  Subspace high = span_of(sp.vectors, 2, 2);
  // R is unchanged by A -> -A, which negates both mu's.
  if (mu_low + mu_high < 0) {
    mu_low = -mu_low;
    mu_high = -mu_high;
  }
  if (mu_low >= mu_high) return KahlerCase2{kappa, tau, mu_low, mu_high, std::move(low), std::move(high)};
  return KahlerCase2{kappa, tau, mu_high, mu_low, std::move(high), std::move(low)};
}

std::pair<double, double> identity_residuals(double kappa, int tau, const SkewEndomorphism& a,
                                             const ComplexStructure& j, const Vector& x, const Vector& y) {
  require_orthonormal({x, y});
  const Matrix& am = a.matrix();
  const Matrix& jm = j.matrix();
  const Matrix bm = am * jm;
  const Matrix jb = jm * bm;
  const Matrix a2 = am * am;
  const Vector ay = am * y;
  const Vector by = bm * y;
  const Vector bx = bm * x;
  const Vector jy = jm * y;
  const Vector jx = jm * x;

  const Vector lhs_one = kappa * (x.dot(jy) * jy - x);
  const Vector rhs_one =
      tau * (x.dot((3.0 * am + 2.0 * jb) * y) * ay + x.dot(by) * by - y.dot(by) * bx);

  const Vector lhs_two = kappa * (y.dot(by) * jx - y.dot(bx) * jy - x.dot(ay) * y);
  const Vector rhs_two = tau * (2.0 * x.dot((am + jb) * y) * (a2 * y) + y.dot(a2 * y) * (am * x) -
                                x.dot(a2 * y) * ay + by.dot(ay) * bx - bx.dot(ay) * by);
  return {(lhs_one - rhs_one).norm(), (lhs_two - rhs_two).norm()};
}

std::pair<double, double> relations_residuals(double kappa, int tau, double mu1, double mu2, const Vector& e1,
                                              const Vector& e2, const ComplexStructure& j) {
  require_orthonormal({e1, e2});
  const double c = e1.dot(j.apply(e2));
  const double c2 = c * c;
  const double three = kappa * (1.0 - c2) - tau * (mu1 * mu2 - mu2 * mu2 * c2);
  const double four = kappa * mu2 * (1.0 - c2) - tau * mu1 * mu2 * mu2 * (1.0 - c2);
  return {std::abs(three), std::abs(four)};
}

EinsteinResult einstein_check(const CurvatureTensor& r, double tol) {
  const Matrix ric = ricci(r).matrix();
  const auto d = ric.rows();
  const double c = ric.trace() / static_cast<double>(d);
  const double dev = max_abs(ric - c * Matrix::Identity(d, d));
  return {dev < tol * std::max(1.0, max_abs(ric)), c};
}

}  // namespace curvlab
