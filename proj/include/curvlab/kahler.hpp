#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "curvlab/curvature.hpp"
#include "curvlab/isotropy.hpp"

namespace curvlab {

/// d = 2: R = kappa R_1.
struct KahlerCase1 {
  double kappa;
};

/// d = 4, kappa != 0: A = J∘(mu1 π^{W1} + mu2 π^{W2}), mu1 mu2 = kappa / tau.
/// Canonical form has mu1 + mu2 >= 0 and mu1 >= mu2.
struct KahlerCase2 {
  double kappa;
  int tau;
  double mu1;
  double mu2;
  Subspace w1;
  Subspace w2;
};

/// kappa != 0 and R = kappa (R_1 + R_J). `mu` is the recovered scalar with
/// A J = -mu Id (so mu² = kappa / tau).
struct KahlerCase3 {
  double kappa;
  int tau;
  double mu;
};

/// kappa = 0: R = c R_{J∘π^W} with W a holomorphic plane (empty when R = 0).
struct KahlerCase4 {
  double c;
  Subspace w;
};

using KahlerClass = std::variant<KahlerCase1, KahlerCase2, KahlerCase3, KahlerCase4>;

/// 1-based case number.
int case_number(const KahlerClass& k);

enum class CommuteType { Commute, Anticommute, Neither };

const char* to_string(CommuteType t);

struct BAnalysis {
  Matrix b;  // A∘J
  CommuteType commute_type;
  Vector eigenvalues;               // ascending; filled only when B is symmetric
  std::vector<Subspace> eigenplanes;  // one Subspace per distinct eigenvalue
};

CommuteType commute_type(const SkewEndomorphism& a, const ComplexStructure& j, double tol = kDefaultTol);

BAnalysis analyze_b(const SkewEndomorphism& a, const ComplexStructure& j, double tol = kDefaultTol);

/// Recomputes everything from R; throws NotKahler, NotAlmostIsotropic or
/// StructureViolation when the tensor is not a Kähler almost isotropic one.
KahlerClass classify_kahler(const CurvatureTensor& r, const ComplexStructure& j, double tol = kDefaultTol);

/// Residual norms of the two vector identities obtained by expanding
/// R(x,y)y = R(Jx,Jy)y and R(x,y)Ay = R(Jx,Jy)Ay for R = kappa R_1 + tau R_A.
std::pair<double, double> identity_residuals(double kappa, int tau, const SkewEndomorphism& a,
                                             const ComplexStructure& j, const Vector& x, const Vector& y);

/// Residuals of the scalar relations satisfied by an orthonormal pair of
/// eigenvectors of B = AJ with eigenvalues mu1, mu2.
std::pair<double, double> relations_residuals(double kappa, int tau, double mu1, double mu2, const Vector& e1,
                                              const Vector& e2, const ComplexStructure& j);

struct EinsteinResult {
  bool is_einstein;
  double constant;
};

EinsteinResult einstein_check(const CurvatureTensor& r, double tol = kDefaultTol);

/// ‖(Id - P) J P‖_max for the projector P onto w.
double j_invariance_defect(const Subspace& w, const ComplexStructure& j);

}  // namespace curvlab
