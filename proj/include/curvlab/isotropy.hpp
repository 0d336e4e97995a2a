#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "curvlab/curvature.hpp"
#include "curvlab/error.hpp"

namespace curvlab {

struct KappaEstimate {
  double kappa;
  int multiplicity;
};

struct IsotropyReport {
  double kappa = 0.0;
  bool is_isotropic = false;
  bool is_almost_isotropic = false;
  /// Largest second singular value of (J_s - kappa Id) on s⊥ over the samples.
  /// Without a common kappa, each sample uses its most favourable eigenvalue.
  double worst_rank_residual = 0.0;
  int samples_used = 0;
  /// Set when is_almost_isotropic is false: NoDominantEigenvalue or InconsistentKappa.
  std::optional<ErrorCode> failure;
  std::string failure_detail;

  /// Throws the recorded failure, if any.
  void require_almost_isotropic() const;
};

struct Decomposition {
  double kappa = 0.0;
  int tau = 0;
  SkewEndomorphism a = SkewEndomorphism::zero(1);
  /// |R - kappa R_1 - tau R_A|_F / max(1, |R|_F).
  double residual = 0.0;
};

/// Eigenvalue of J_s on s⊥ of multiplicity >= d - 2 and that multiplicity.
/// Throws NoDominantEigenvalue if no such cluster exists. For d = 2 the single
/// eigenvalue is returned; d = 3 is ambiguous and throws PreconditionViolated
/// (almost_isotropy_scan resolves it by voting across samples).
KappaEstimate kappa_at(const CurvatureTensor& r, const Vector& s, double tol = kDefaultTol);

/// Runs kappa_at over unit_sphere_samples(d, n_samples, seed) and checks that
/// every sample agrees on kappa. Failures are reported, not thrown.
IsotropyReport almost_isotropy_scan(const CurvatureTensor& r, int n_samples, std::uint64_t seed,
                                    double tol = kDefaultTol);

/// lambda(s) = trace(J_s) - (d - 2) kappa.
double extremal_curvature(const CurvatureTensor& r, double kappa, const Vector& s);

/// The kappa-eigenspace of J_s restricted to s⊥.
Subspace eigenspace_at(const CurvatureTensor& r, double kappa, const Vector& s,
                       double tol = kDefaultTol);

/// Recovers (kappa, tau, A) with R = kappa R_1 + tau R_A. A carries a canonical
/// global sign: its first entry in row-major order that is not negligible is positive.
Decomposition recover_decomposition(const CurvatureTensor& r, double tol = kDefaultTol);

/// max(1, largest absolute component).
inline double tensor_scale(const CurvatureTensor& r) { return std::max(1.0, r.max_abs()); }

}  // namespace curvlab
