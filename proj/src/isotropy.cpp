#include "curvlab/isotropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace curvlab {

namespace {

constexpr std::uint64_t kScanSeed = 0x5eedc0deULL;

// Spectrum of J_s restricted to s⊥, with the orthonormal basis of s⊥ used.
struct PerpSpectrum {
  Matrix perp;     // d x (d-1)
  Spectrum local;  // eigenpairs in perp coordinates
};

PerpSpectrum perp_spectrum(const CurvatureTensor& r, const Vector& s) {
  const Matrix jac = jacobi_operator(r, s).matrix();
  Matrix perp = orthogonal_complement(s, r.dim()).basis();
  Spectrum local = symmetric_spectrum(Matrix(perp.transpose() * jac * perp));
  return {std::move(perp), std::move(local)};
}

double mean(const Vector& v, Eigen::Index first, Eigen::Index count) {
  return v.segment(first, count).sum() / static_cast<double>(count);
}

// Second largest |mu - kappa| over the s⊥ spectrum, and the largest.
std::pair<double, double> rank_residuals(const Vector& mu, double kappa) {
  std::vector<double> dev(static_cast<std::size_t>(mu.size()));
  for (Eigen::Index i = 0; i < mu.size(); ++i) dev[static_cast<std::size_t>(i)] = std::abs(mu(i) - kappa);
  std::sort(dev.begin(), dev.end(), std::greater<>());
  const double first = dev.empty() ? 0.0 : dev[0];
  const double second = dev.size() < 2 ? 0.0 : dev[1];
  return {second, first};
}

// Rank-one residual τ(As)(As)ᵀ candidate: (J_s - kappa (Id - s sᵀ)) / 3.
Matrix shifted_jacobi(const CurvatureTensor& r, double kappa, const Vector& s) {
  const int d = r.dim();
  const Matrix proj = Matrix::Identity(d, d) - s * s.transpose();
  return (jacobi_operator(r, s).matrix() - kappa * proj) / 3.0;
}

// Parity union-find: parent links carry the sign relating a node to its parent.
class SignForest {
 public:
  explicit SignForest(int n) : parent_(static_cast<std::size_t>(n)), flip_(static_cast<std::size_t>(n), 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  // Root of i and the sign of i relative to that root.
  std::pair<int, int> find(int i) {
    int sign = 1;
    int node = i;
    while (parent_[static_cast<std::size_t>(node)] != node) {
      sign *= flip_[static_cast<std::size_t>(node)];
      node = parent_[static_cast<std::size_t>(node)];
    }
    return {node, sign};
  }

  // Records eps_i * eps_j = relation; returns false if it contradicts earlier links.
  bool unite(int i, int j, int relation) {
    auto [ri, si] = find(i);
    auto [rj, sj] = find(j);
    if (ri == rj) return si * sj == relation;
    parent_[static_cast<std::size_t>(rj)] = ri;
    flip_[static_cast<std::size_t>(rj)] = si * sj * relation;
    return true;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> flip_;
};

double relative_residual(const CurvatureTensor& r, double kappa, int tau, const SkewEndomorphism& a) {
  CurvatureTensor diff = r - kappa * build_R1(r.dim());
  if (tau != 0) diff -= static_cast<double>(tau) * build_RA(a);
  return diff.frobenius_norm() / std::max(1.0, r.frobenius_norm());
}

Matrix canonical_skew(Matrix a) {
  a = 0.5 * (a - a.transpose());
  const double cutoff = 1e-8 * max_abs(a);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (std::abs(a(i, j)) > cutoff) {
        if (a(i, j) < 0) a = -a;
        return a;
      }
    }
  return a;
}

}  // namespace

void IsotropyReport::require_almost_isotropic() const {
  if (failure) throw Error(*failure, failure_detail);
  if (!is_almost_isotropic) throw Error(ErrorCode::NotAlmostIsotropic, failure_detail);
}

KappaEstimate kappa_at(const CurvatureTensor& r, const Vector& s, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::NonPositiveTolerance, "tol must be positive");
  const int d = r.dim();
  if (d == 3) {
    throw Error(ErrorCode::PreconditionViolated, "kappa_at is ambiguous in dimension 3");
  }
  const Vector mu = perp_spectrum(r, s).local.values;
  const auto n = mu.size();
  if (n == 1) return {mu(0), 1};
  const double width = tol * std::max(1.0, mu.cwiseAbs().maxCoeff());
  if (mu(n - 1) - mu(0) <= width) return {mean(mu, 0, n), static_cast<int>(n)};
  if (mu(n - 2) - mu(0) <= width) return {mean(mu, 0, n - 1), static_cast<int>(n - 1)};
  if (mu(n - 1) - mu(1) <= width) return {mean(mu, 1, n - 1), static_cast<int>(n - 1)};
  throw Error(ErrorCode::NoDominantEigenvalue,
              "no eigenvalue of multiplicity " + std::to_string(d - 2) + " on s⊥");
}

IsotropyReport almost_isotropy_scan(const CurvatureTensor& r, int n_samples, std::uint64_t seed,
                                    double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::NonPositiveTolerance, "tol must be positive");
  const int d = r.dim();
  const double scale = tensor_scale(r);
  const std::vector<Vector> samples = unit_sphere_samples(d, n_samples, seed);

  IsotropyReport rep;
  rep.samples_used = static_cast<int>(samples.size());
  if (samples.empty()) {
    rep.is_almost_isotropic = true;
    rep.is_isotropic = true;
    return rep;
  }

  std::vector<Vector> spectra;
  spectra.reserve(samples.size());
  for (const Vector& s : samples) spectra.push_back(perp_spectrum(r, s).local.values);

  const auto fail = [&rep, &spectra](ErrorCode code, std::string detail) {
    if (rep.worst_rank_residual == 0.0) {
      // no common kappa: measure against the best candidate of each sample
      for (const Vector& mu : spectra) {
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index k = 0; k < mu.size(); ++k) best = std::min(best, rank_residuals(mu, mu(k)).first);
        rep.worst_rank_residual = std::max(rep.worst_rank_residual, best);
      }
    }
    rep.is_almost_isotropic = false;
    rep.is_isotropic = false;
    rep.failure = code;
    rep.failure_detail = std::move(detail);
    return rep;
  };

  double kappa = 0.0;
  if (d == 3) {
    // Each sample offers both eigenvalues; keep the candidate every sample shares.
    const auto supported = [&](double candidate) {
      int hits = 0;
      for (const Vector& mu : spectra) {
        const double width = tol * std::max({1.0, mu.cwiseAbs().maxCoeff(), std::abs(candidate)});
        if (std::abs(mu(0) - candidate) <= width || std::abs(mu(1) - candidate) <= width) ++hits;
      }
      return hits;
    };
    const int total = static_cast<int>(spectra.size());
    const int low = supported(spectra[0](0));
    const int high = supported(spectra[0](1));
    if (low < total && high < total) {
      return fail(ErrorCode::InconsistentKappa, "no eigenvalue is shared by every sample");
    }
    kappa = low == total ? spectra[0](0) : spectra[0](1);
  } else {
    double sum = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      try {
        const double k = kappa_at(r, samples[i], tol).kappa;
        if (i > 0 && std::abs(k - sum / static_cast<double>(i)) > tol * scale) {
          return fail(ErrorCode::InconsistentKappa,
                      "sample " + std::to_string(i) + " gives kappa " + std::to_string(k));
        }
        sum += k;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoDominantEigenvalue) throw;
        return fail(ErrorCode::NoDominantEigenvalue, "sample " + std::to_string(i) + ": " + e.what());
      }
    }
    kappa = sum / static_cast<double>(samples.size());
  }

  rep.kappa = kappa;
  rep.is_almost_isotropic = true;
  rep.is_isotropic = true;
  for (const Vector& mu : spectra) {
    const auto [second, first] = rank_residuals(mu, kappa);
    rep.worst_rank_residual = std::max(rep.worst_rank_residual, second);
    if (second > tol * scale) {
      return fail(ErrorCode::NoDominantEigenvalue, "rank of J_s - kappa Id exceeds one");
    }
    if (first > tol * scale) rep.is_isotropic = false;
  }
  return rep;
}

double extremal_curvature(const CurvatureTensor& r, double kappa, const Vector& s) {
  // J_s kills s, so the full trace equals the trace on s⊥.
  return jacobi_operator(r, s).matrix().trace() - static_cast<double>(r.dim() - 2) * kappa;
}

Subspace eigenspace_at(const CurvatureTensor& r, double kappa, const Vector& s, double tol) {
  const PerpSpectrum ps = perp_spectrum(r, s);
  const Vector& mu = ps.local.values;
  const double width = tol * std::max({1.0, mu.size() ? mu.cwiseAbs().maxCoeff() : 0.0, std::abs(kappa)});
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (std::abs(mu(i) - kappa) <= width) keep.push_back(i);
  }
  Matrix basis(r.dim(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = ps.perp * ps.local.vectors.col(keep[c]);
  }
  return column_span(basis, 1e-6);
}

Decomposition recover_decomposition(const CurvatureTensor& r, double tol) {
  const int d = r.dim();
  const double scale = tensor_scale(r);

  const IsotropyReport scan = almost_isotropy_scan(r, d + 32, kScanSeed, tol);
  if (!scan.is_almost_isotropic) {
    throw Error(ErrorCode::NotAlmostIsotropic, scan.failure_detail);
  }
  const double kappa = scan.kappa;

  Decomposition out;
  out.kappa = kappa;
  out.a = SkewEndomorphism::zero(d);

  // Columns A e_i up to sign, from the rank-one part of each basis Jacobi operator.
  std::vector<Vector> columns(static_cast<std::size_t>(d), Vector::Zero(d));
  std::vector<bool> nonzero(static_cast<std::size_t>(d), false);
  int tau = 0;
  for (int i = 0; i < d; ++i) {
    const Vector e = Vector::Unit(d, i);
    const Spectrum sp = symmetric_spectrum(shifted_jacobi(r, kappa, e));
    const Vector& vals = sp.values;
    // dominant eigenvalue by magnitude sits at one end of the ascending list
    const Eigen::Index top = std::abs(vals(0)) > std::abs(vals(d - 1)) ? 0 : d - 1;
    double second = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
      if (k != top) second = std::max(second, std::abs(vals(k)));
    }
    if (second > tol * scale) {
      throw Error(ErrorCode::NotAlmostIsotropic, "rank of the shifted Jacobi operator at e_" +
                                                     std::to_string(i + 1) + " exceeds one");
    }
    const double lambda = vals(top);
    if (std::abs(lambda) <= tol * scale) continue;  // e_i is (numerically) in ker A
    const int tau_i = lambda > 0 ? 1 : -1;
    if (tau != 0 && tau_i != tau) {
      throw Error(ErrorCode::InconsistentTau, "basis directions disagree on the sign of tau");
    }
    tau = tau_i;
    columns[static_cast<std::size_t>(i)] = std::sqrt(std::abs(lambda)) * sp.vectors.col(top);
    nonzero[static_cast<std::size_t>(i)] = true;
  }

  if (tau == 0) {
    out.residual = relative_residual(r, kappa, 0, out.a);
    if (out.residual > tol) {
      throw Error(ErrorCode::SignResolutionFailure,
                  "isotropic reconstruction residual " + std::to_string(out.residual));
    }
    return out;
  }
  out.tau = tau;

  std::vector<int> active;
  double col_scale = 0.0;
  for (int i = 0; i < d; ++i) {
    if (nonzero[static_cast<std::size_t>(i)]) {
      active.push_back(i);
      col_scale = std::max(col_scale, columns[static_cast<std::size_t>(i)].norm());
    }
  }

  // Mixed-direction probe: decides eps_j relative to eps_i from J_s at s = (e_i + e_j)/√2.
  const auto probe = [&](int i, int j) {
    const Vector s = (Vector::Unit(d, i) + Vector::Unit(d, j)) / std::sqrt(2.0);
    const Matrix target = shifted_jacobi(r, kappa, s);
    const Vector& ci = columns[static_cast<std::size_t>(i)];
    const Vector& cj = columns[static_cast<std::size_t>(j)];
    const Vector plus = (ci + cj) / std::sqrt(2.0);
    const Vector minus = (ci - cj) / std::sqrt(2.0);
    const double err_plus = max_abs(target - tau * plus * plus.transpose());
    const double err_minus = max_abs(target - tau * minus * minus.transpose());
    return err_plus <= err_minus ? 1 : -1;
  };

  const auto assemble = [&](const std::vector<int>& eps) {
    Matrix a = Matrix::Zero(d, d);
    for (int i : active) a.col(i) = eps[static_cast<std::size_t>(i)] * columns[static_cast<std::size_t>(i)];
    return SkewEndomorphism(canonical_skew(a));
  };

  // Strategy 1: propagate signs through skew-symmetry, then probe across components.
  const auto propagate_then_probe = [&]() -> std::optional<std::vector<int>> {
    SignForest forest(d);
    const double overlap = 1e-6 * std::max(1.0, col_scale);
    for (std::size_t p = 0; p < active.size(); ++p)
      for (std::size_t q = p + 1; q < active.size(); ++q) {
        const int i = active[p];
        const int j = active[q];
        const double cji = columns[static_cast<std::size_t>(j)](i);  // <e_i, A e_j> up to eps_j
        const double cij = columns[static_cast<std::size_t>(i)](j);  // <e_j, A e_i> up to eps_i
        if (std::abs(cji) > overlap && std::abs(cij) > overlap) {
          // eps_j cji = -eps_i cij
          const int relation = (cji * cij) > 0 ? -1 : 1;
          if (!forest.unite(i, j, relation)) return std::nullopt;
        }
      }
    const int root = active.front();
    for (int j : active) {
      const int rj = forest.find(j).first;
      if (rj != forest.find(root).first) forest.unite(root, rj, probe(root, rj));
    }
    std::vector<int> eps(static_cast<std::size_t>(d), 1);
    for (int i : active) eps[static_cast<std::size_t>(i)] = forest.find(i).second;
    return eps;
  };

  // Strategy 2: probe every active column directly against the first.
  const auto probe_all = [&]() {
    std::vector<int> eps(static_cast<std::size_t>(d), 1);
    const int root = active.front();
    for (int j : active) {
      if (j != root) eps[static_cast<std::size_t>(j)] = probe(root, j);
    }
    return eps;
  };

  double best = std::numeric_limits<double>::infinity();
  for (int strategy = 0; strategy < 2; ++strategy) {
    std::optional<std::vector<int>> eps = strategy == 0 ? propagate_then_probe() : probe_all();
    if (!eps) continue;
    SkewEndomorphism a = assemble(*eps);
    const double residual = relative_residual(r, kappa, tau, a);
    if (residual < best) {
      best = residual;
      out.a = std::move(a);
      out.residual = residual;
    }
    if (residual <= tol) return out;
  }
  throw Error(ErrorCode::SignResolutionFailure, "reconstruction residual " + std::to_string(best));
}

}  // namespace curvlab
