#include <gtest/gtest.h>

#include <cmath>

#include "curvlab/generators.hpp"
#include "curvlab/kahler.hpp"
#include "support.hpp"

using namespace curvlab;
using curvlab::testing::blocks_model;
using curvlab::testing::code_of;
using curvlab::testing::complex_space_form;
using curvlab::testing::e;
using curvlab::testing::quaternion_j;
using curvlab::testing::span;
using curvlab::testing::standard_j_skew;

namespace {

const ComplexStructure& j4() {
  static const ComplexStructure j = standard_complex_structure(4);
  return j;
}

}  // namespace

TEST(CommuteTypeTest, Examples) {
  EXPECT_EQ(commute_type(standard_j_skew(4), j4()), CommuteType::Commute);
  EXPECT_EQ(commute_type(quaternion_j(), j4()), CommuteType::Anticommute);
  const SkewEndomorphism mixed(standard_j_skew(4).matrix() + quaternion_j().matrix());
  EXPECT_EQ(commute_type(mixed, j4()), CommuteType::Neither);
  EXPECT_STREQ(to_string(CommuteType::Anticommute), "anticommute");
}

TEST(AnalyzeBTest, EigenplanesAreJInvariant) {
  const BAnalysis b = analyze_b(block_skew(4, {2.0, 0.5}), j4());
  ASSERT_EQ(b.commute_type, CommuteType::Commute);
  ASSERT_EQ(b.eigenplanes.size(), 2u);
  EXPECT_NEAR(b.eigenvalues(0), -2.0, 1e-12);
  EXPECT_NEAR(b.eigenvalues(3), -0.5, 1e-12);
  for (const Subspace& w : b.eigenplanes) EXPECT_LT(j_invariance_defect(w, j4()), 1e-12);
}

TEST(ClassifyTest, ComplexSpaceFormNegative) {
  const KahlerClass k = classify_kahler(complex_space_form(-1.0, 6), standard_complex_structure(6));
  ASSERT_EQ(case_number(k), 3);
  EXPECT_NEAR(std::get<KahlerCase3>(k).kappa, -1.0, 1e-10);
  EXPECT_NEAR(std::get<KahlerCase3>(k).mu, 1.0, 1e-10);
}

TEST(ClassifyTest, FourDimensionalComplexSpaceFormCollapsesToCase3) {
  const KahlerClass k = classify_kahler(complex_space_form(2.0, 4), j4());
  ASSERT_EQ(case_number(k), 3);
  EXPECT_NEAR(std::get<KahlerCase3>(k).kappa, 2.0, 1e-10);
}

TEST(ClassifyTest, Case2Blocks) {
  const KahlerClass k = classify_kahler(blocks_model(), j4());
  ASSERT_EQ(case_number(k), 2);
  const auto& c = std::get<KahlerCase2>(k);
  EXPECT_NEAR(c.kappa, 1.0, 1e-10);
  EXPECT_EQ(c.tau, 1);
  EXPECT_NEAR(c.mu1, 2.0, 1e-10);
  EXPECT_NEAR(c.mu2, 0.5, 1e-10);
  EXPECT_LT(largest_principal_angle(c.w1, span({e(4, 0), e(4, 1)})), 1e-8);
  EXPECT_LT(largest_principal_angle(c.w2, span({e(4, 2), e(4, 3)})), 1e-8);
}

TEST(ClassifyTest, Case2RotatedByUnitary) {
  gen::Sampler rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const double mu1 = rng.uniform(0.5, 2.0);
    const int tau = trial % 2 ? 1 : -1;
    const double kappa = tau * mu1 * rng.uniform(0.1, 0.4);
    const double mu2 = kappa / (tau * mu1);
    const Matrix u = rng.unitary(4);
    const SkewEndomorphism a(u * block_skew(4, {mu1, mu2}).matrix() * u.transpose());
    const KahlerClass k = classify_kahler(build_model(kappa, tau, a), j4());
    ASSERT_EQ(case_number(k), 2);
    const auto& c = std::get<KahlerCase2>(k);
    EXPECT_NEAR(c.mu1, mu1, 1e-8);
    EXPECT_NEAR(c.mu2, mu2, 1e-8);
    EXPECT_LT(largest_principal_angle(c.w1, Subspace(Matrix(u.leftCols(2)))), 1e-6);
  }
}

TEST(ClassifyTest, Case4PlaneModel) {
  const SkewEndomorphism a(std::sqrt(2.0) * block_skew(6, {1.0}).matrix());
  const KahlerClass k = classify_kahler(build_model(0.0, 1, a), standard_complex_structure(6));
  ASSERT_EQ(case_number(k), 4);
  EXPECT_NEAR(std::get<KahlerCase4>(k).c, 2.0, 1e-10);
  EXPECT_LT(largest_principal_angle(std::get<KahlerCase4>(k).w, span({e(6, 0), e(6, 1)})), 1e-8);
}

TEST(ClassifyTest, ZeroTensorIsFlatCase4) {
  const KahlerClass k = classify_kahler(CurvatureTensor(4), j4());
  ASSERT_EQ(case_number(k), 4);
  EXPECT_EQ(std::get<KahlerCase4>(k).c, 0.0);
  EXPECT_EQ(std::get<KahlerCase4>(k).w.dim(), 0);
}

TEST(ClassifyTest, SurfaceIsCase1) {
  CurvatureTensor r = build_R1(2);
  r *= -0.7;
  const KahlerClass k = classify_kahler(r, standard_complex_structure(2));
  ASSERT_EQ(case_number(k), 1);
  EXPECT_NEAR(std::get<KahlerCase1>(k).kappa, -0.7, 1e-12);
}

TEST(ClassifyTest, RejectsNonKahler) {
  EXPECT_EQ(code_of([] { classify_kahler(build_R1(4), j4()); }), ErrorCode::NotKahler);
  EXPECT_EQ(code_of([] { classify_kahler(build_model(1.0, 1, quaternion_j()), j4()); }), ErrorCode::NotKahler);
}

TEST(ClassifyTest, RejectsBrokenSymmetries) {
  CurvatureTensor r = blocks_model();
  r(0, 1, 2, 3) += 0.1;
  EXPECT_EQ(code_of([&] { classify_kahler(r, j4()); }), ErrorCode::SymmetryViolation);
}

TEST(ClassifyTest, RejectsNonPositiveTolerance) {
  EXPECT_EQ(code_of([] { classify_kahler(blocks_model(), j4(), 0.0); }), ErrorCode::NonPositiveTolerance);
}

TEST(IdentityTest, ComplexSpaceFormPairs) {
  gen::Sampler rng(2);
  const ComplexStructure j = standard_complex_structure(6);
  for (int i = 0; i < 20; ++i) {
    const Matrix q = rng.orthonormal(6, 2);
    const auto [one, two] = identity_residuals(1.0, 1, standard_j_skew(6), j, q.col(0), q.col(1));
    EXPECT_LT(one, 1e-10);
    EXPECT_LT(two, 1e-10);
  }
}

TEST(IdentityTest, Case2Pairs) {
  gen::Sampler rng(3);
  for (int i = 0; i < 20; ++i) {
    const Matrix q = rng.orthonormal(4, 2);
    const auto [one, two] = identity_residuals(1.0, 1, block_skew(4, {2.0, 0.5}), j4(), q.col(0), q.col(1));
    EXPECT_LT(one, 1e-10);
    EXPECT_LT(two, 1e-10);
  }
}

TEST(IdentityTest, QuaternionViolates) {
  EXPECT_GT(identity_residuals(1.0, 1, quaternion_j(), j4(), e(4, 0), e(4, 2)).first, 0.1);
  EXPECT_EQ(code_of([] { identity_residuals(1.0, 1, quaternion_j(), j4(), e(4, 0), e(4, 0)); }),
            ErrorCode::NotOrthonormal);
}

TEST(IdentityTest, SkewCommuteScalarRelation) {
  // kappa <Ax,Ax> = tau <Ax,Ax>² holds because |Qx| = 1 = kappa / tau for every unit x
  gen::Sampler rng(8);
  const SkewEndomorphism q = quaternion_j();
  for (int i = 0; i < 10; ++i) {
    const double n = q.apply(rng.unit(4)).squaredNorm();
    EXPECT_NEAR(1.0 * n, 1.0 * n * n, 1e-12);
  }
  EXPECT_TRUE(almost_isotropy_scan(build_model(1.0, 1, q), 40, 1).is_almost_isotropic);
}

TEST(RelationsTest, Examples) {
  const auto [a3, a4] = relations_residuals(1.0, 1, 2.0, 0.5, e(4, 0), e(4, 2), j4());
  EXPECT_NEAR(a3, 0.0, 1e-14);
  EXPECT_NEAR(a4, 0.0, 1e-14);
  const auto [b3, b4] = relations_residuals(1.0, 1, 2.0, 2.0, e(4, 0), e(4, 1), j4());
  EXPECT_NEAR(b3, 0.0, 1e-14);
  EXPECT_NEAR(b4, 0.0, 1e-14);
  EXPECT_NEAR(relations_residuals(1.0, 1, 3.0, 3.0, e(4, 0), e(4, 2), j4()).first, 8.0, 1e-12);
}

TEST(EinsteinTest, Examples) {
  const EinsteinResult cp = einstein_check(complex_space_form(1.0, 6));
  EXPECT_TRUE(cp.is_einstein);
  EXPECT_NEAR(cp.constant, 8.0, 1e-12);
  EXPECT_FALSE(einstein_check(blocks_model()).is_einstein);
  const EinsteinResult flat = einstein_check(CurvatureTensor(4));
  EXPECT_TRUE(flat.is_einstein);
  EXPECT_EQ(flat.constant, 0.0);
}
