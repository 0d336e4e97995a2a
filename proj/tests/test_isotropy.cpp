#include <gtest/gtest.h>

#include <cmath>

#include "curvlab/generators.hpp"
#include "curvlab/isotropy.hpp"
#include "support.hpp"

using namespace curvlab;
using curvlab::testing::blocks_model;
using curvlab::testing::code_of;
using curvlab::testing::e;
using curvlab::testing::span;

namespace {

// R1 + 0.5 (R_A + R_A') for generic A, A': Jacobi operators have rank-2 deviation.
CurvatureTensor broken_model(int d) {
  CurvatureTensor r = build_RA(random_skew(d, 101));
  r += build_RA(random_skew(d, 202));
  r *= 0.5;
  r += build_R1(d);
  return r;
}

double distance_up_to_sign(const Matrix& a, const Matrix& b) {
  return std::min(max_abs(a - b), max_abs(a + b));
}

}  // namespace

TEST(KappaAtTest, BlocksModel) {
  const KappaEstimate k = kappa_at(blocks_model(), e(4, 0));
  EXPECT_NEAR(k.kappa, 1.0, 1e-12);
  EXPECT_EQ(k.multiplicity, 2);
}

TEST(KappaAtTest, IsotropicAnyDirection) {
  for (const Vector& s : unit_sphere_samples(6, 10, 8)) {
    const KappaEstimate k = kappa_at(build_R1(6), s);
    EXPECT_NEAR(k.kappa, 1.0, 1e-12);
    EXPECT_EQ(k.multiplicity, 5);
  }
}

TEST(KappaAtTest, BrokenClusterRejected) {
  EXPECT_EQ(code_of([] { kappa_at(broken_model(6), e(6, 0)); }), ErrorCode::NoDominantEigenvalue);
}

TEST(ScanTest, RandomModel) {
  const IsotropyReport rep = almost_isotropy_scan(build_model(-2.0, 1, random_skew(6, 5)), 40, 1);
  EXPECT_TRUE(rep.is_almost_isotropic);
  EXPECT_FALSE(rep.is_isotropic);
  EXPECT_NEAR(rep.kappa, -2.0, 1e-9);
  EXPECT_NO_THROW(rep.require_almost_isotropic());
}

TEST(ScanTest, ScaledR1OddDimension) {
  CurvatureTensor r = build_R1(5);
  r *= 3.0;
  const IsotropyReport rep = almost_isotropy_scan(r, 20, 1);
  EXPECT_TRUE(rep.is_isotropic);
  EXPECT_NEAR(rep.kappa, 3.0, 1e-12);
}

TEST(ScanTest, ThreeDimensionalModel) {
  const IsotropyReport rep = almost_isotropy_scan(build_model(0.5, -1, random_skew(3, 2)), 30, 4);
  EXPECT_TRUE(rep.is_almost_isotropic);
  EXPECT_NEAR(rep.kappa, 0.5, 1e-9);
}

TEST(ScanTest, BrokenModelReported) {
  const IsotropyReport rep = almost_isotropy_scan(broken_model(6), 40, 1);
  EXPECT_FALSE(rep.is_almost_isotropic);
  ASSERT_TRUE(rep.failure.has_value());
  EXPECT_GT(rep.worst_rank_residual, 1e-3);
  EXPECT_THROW(rep.require_almost_isotropic(), Error);
}

TEST(ExtremalTest, Examples) {
  EXPECT_NEAR(extremal_curvature(blocks_model(), 1.0, e(4, 0)), 13.0, 1e-12);
  EXPECT_NEAR(extremal_curvature(blocks_model(), 1.0, e(4, 2)), 1.75, 1e-12);
  for (const Vector& s : unit_sphere_samples(4, 8, 2)) EXPECT_NEAR(extremal_curvature(build_R1(4), 1.0, s), 1.0, 1e-12);
  EXPECT_EQ(code_of([] { extremal_curvature(build_R1(4), 1.0, Vector::Ones(4)); }), ErrorCode::NotUnit);
}

TEST(EigenspaceTest, Examples) {
  EXPECT_LT(largest_principal_angle(eigenspace_at(blocks_model(), 1.0, e(4, 0)), span({e(4, 2), e(4, 3)})), 1e-10);
  EXPECT_LT(largest_principal_angle(eigenspace_at(build_R1(4), 1.0, e(4, 0)), span({e(4, 1), e(4, 2), e(4, 3)})),
            1e-10);
  const CurvatureTensor r = build_model(1.0, 1, block_skew(4, {1.0}));
  EXPECT_EQ(eigenspace_at(r, 1.0, e(4, 2)).dim(), 3);
}

TEST(EigenspaceTest, IsSpanOfSAndAsComplement) {
  gen::Sampler rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const SkewEndomorphism a = random_skew(6, rng.next_seed());
    const Vector s = rng.unit(6);
    Matrix sas(6, 2);
    sas << s, a.apply(s);
    const Subspace expected = orthogonal_complement(sas, 6);
    EXPECT_LT(largest_principal_angle(eigenspace_at(build_model(0.7, 1, a), 0.7, s), expected), 1e-8);
  }
}

TEST(RecoverTest, BlocksModel) {
  const Decomposition d = recover_decomposition(blocks_model());
  EXPECT_NEAR(d.kappa, 1.0, 1e-12);
  EXPECT_EQ(d.tau, 1);
  EXPECT_LT(distance_up_to_sign(d.a.matrix(), block_skew(4, {2.0, 0.5}).matrix()), 1e-8);
  EXPECT_LT(d.residual, 1e-10);
}

TEST(RecoverTest, IsotropicOddDimension) {
  CurvatureTensor r = build_R1(5);
  r *= 3.0;
  const Decomposition d = recover_decomposition(r);
  EXPECT_NEAR(d.kappa, 3.0, 1e-12);
  EXPECT_EQ(d.tau, 0);
  EXPECT_TRUE(d.a.is_zero());
}

TEST(RecoverTest, CanonicalSign) {
  const Decomposition d = recover_decomposition(build_model(0.3, -1, random_skew(6, 77)));
  const Matrix& a = d.a.matrix();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double x = a(i / a.cols(), i % a.cols());
    if (std::abs(x) > 1e-8 * max_abs(a)) {
      EXPECT_GT(x, 0.0);
      break;
    }
  }
}

TEST(RecoverTest, RandomRoundTrip) {
  gen::Sampler rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 4 + 2 * (trial % 3);
    const double kappa = rng.uniform(-2, 2);
    const int tau = trial % 2 ? 1 : -1;
    const SkewEndomorphism a = trial % 3 == 0 ? rng.basis_blocks(d, 1) : rng.skew_with_kernel(d, trial % 2 ? 0 : 2);
    const CurvatureTensor r = build_model(kappa, tau, a);
    const Decomposition rec = recover_decomposition(r);
    EXPECT_NEAR(rec.kappa, kappa, 1e-8);
    EXPECT_EQ(rec.tau, tau);
    EXPECT_LT(distance_up_to_sign(rec.a.matrix(), a.matrix()), 1e-8);
    const CurvatureTensor back = build_model(rec.kappa, rec.tau, rec.a);
    EXPECT_LT((back - r).frobenius_norm() / r.frobenius_norm(), 1e-8);
  }
}

TEST(RecoverTest, NotAlmostIsotropic) {
  EXPECT_EQ(code_of([] { recover_decomposition(broken_model(6)); }), ErrorCode::NotAlmostIsotropic);
}

TEST(ExtremalIdentityTest, LambdaAndEqualRatio) {
  gen::Sampler rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 4 + 2 * (trial % 2);
    const double kappa = rng.uniform(-2, 2);
    const int tau = trial % 2 ? 1 : -1;
    const SkewEndomorphism a = random_skew(d, rng.next_seed());
    const CurvatureTensor r = build_model(kappa, tau, a);
    const double scale = tensor_scale(r);
    for (int k = 0; k < 10; ++k) {
      const Matrix q = rng.orthonormal(d, 2);
      const Vector v = q.col(0);
      const Vector w = q.col(1);
      const double lv = extremal_curvature(r, kappa, v);
      const double lw = extremal_curvature(r, kappa, w);
      const double av = a.apply(v).squaredNorm();
      const double aw = a.apply(w).squaredNorm();
      EXPECT_LT(std::abs(lv - kappa - 3.0 * tau * av), 1e-8 * scale);
      EXPECT_LT(std::abs((lv - kappa) * aw - (lw - kappa) * av), 1e-8 * scale);
    }
  }
}
