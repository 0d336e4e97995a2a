#include "curvlab/suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvlab/curvature.hpp"
#include "curvlab/distribution.hpp"
#include "curvlab/generators.hpp"
#include "curvlab/isotropy.hpp"
#include "curvlab/kahler.hpp"

namespace curvlab {

namespace {

class Check {
 public:
  Check(std::string module, std::string property, double threshold) {
    row_.module = std::move(module);
    row_.property = std::move(property);
    row_.threshold = threshold;
  }

  void observe(double value) {
    ++row_.trials;
    if (std::isnan(value)) value = std::numeric_limits<double>::infinity();
    row_.worst = std::max(row_.worst, value);
  }
  void observe_ok(bool ok) { observe(ok ? 0.0 : 1.0); }

  SuiteRow finish() {
    row_.pass = row_.worst < row_.threshold;
    return row_;
  }

 private:
  SuiteRow row_;
};

struct Model {
  double kappa;
  int tau;
  SkewEndomorphism a;
  CurvatureTensor r;
};

Model random_model(gen::Sampler& rng, int d, int trial) {
  const double kappa = rng.uniform(-2.0, 2.0);
  const int tau = rng.pick(0, 1) ? 1 : -1;
  SkewEndomorphism a = SkewEndomorphism::zero(d);
  switch (trial % 3) {
    case 0: a = random_skew(d, rng.next_seed()); break;
    case 1: a = rng.basis_blocks(d); break;
    default: a = rng.skew_with_kernel(d, d % 2 == 0 ? (d >= 4 ? 2 : 0) : 1); break;
  }
  CurvatureTensor r = build_model(kappa, tau, a);
  return {kappa, tau, std::move(a), std::move(r)};
}

// A e1 = e3, A e2 = -e4, A e3 = -e1, A e4 = e2 on the first four coordinates.
Matrix quaternion_j(int d) {
  Matrix q = Matrix::Zero(d, d);
  q(2, 0) = 1.0;
  q(0, 2) = -1.0;
  q(3, 1) = -1.0;
  q(1, 3) = 1.0;
  return q;
}

}  // namespace

std::vector<SuiteRow> run_lemma_suite(const SuiteOptions& options) {
  gen::Sampler rng(options.seed);

  Check projector_idem("core-linalg", "projector is idempotent", 1e-12);
  Check spectrum_orth("core-linalg", "eigenvectors are orthonormal", 1e-10);
  Check skew_even("core-linalg", "random_skew has even rank (failures)", 0.5);

  Check model_sym("curvature-tensor", "model passes curvature symmetries", 1e-12);
  Check jacobi_formula("curvature-tensor", "J_s(w) = kappa w + 3 tau <w,As> As", 1e-10);
  Check ricci_formula("curvature-tensor", "Ric = (d-1) kappa Id - 3 tau A^2", 1e-10);
  Check einstein_iff("curvature-tensor", "Einstein iff A^2 scalar (failures)", 0.5);
  Check almost_iso("curvature-tensor", "rank(J_s - kappa Id) <= 1 (failures)", 0.5);

  Check round_trip_kappa("isotropy-analysis", "round-trip kappa error", 1e-8);
  Check round_trip_r("isotropy-analysis", "round-trip relative tensor error", 1e-8);
  Check equal_ratio("isotropy-analysis", "(lambda(v)-k)|Aw|^2 = (lambda(w)-k)|Av|^2", 1e-8);
  Check lambda_formula("isotropy-analysis", "lambda(s) = kappa + 3 tau |As|^2", 1e-8);
  Check jacobi_split("isotropy-analysis", "J_s via lambda and As", 1e-8);
  Check eigenspace("isotropy-analysis", "E_s = span(s, As)^perp (angle)", 1e-6);

  Check dichotomy("kahler-classify", "classified A commutes; neither-type rejected (failures)", 0.5);
  Check planes("kahler-classify", "B eigenspaces are J-invariant", 1e-8);
  Check product("kahler-classify", "mu1 mu2 = kappa / tau", 1e-8);
  Check nullity("kahler-classify", "nullity space = W^perp (angle)", 1e-6);
  Check skewcommute("kahler-classify", "anticommuting A: identity holds, tensor rejected (failures)", 0.5);

  Check membership("sphere-distribution", "x in D_s implies s in D_x", 1e-10);
  Check geodesy_tangent("sphere-distribution", "tangent great circles stay tangent", 1e-10);
  Check geodesy_transverse("sphere-distribution", "transverse circles never tangent (failures)", 0.5);
  Check planted("sphere-distribution", "planted [A] recovered (angle)", 1e-6);
  Check sphere_parts("sphere-distribution", "singular-set structure parts (1)-(4)", 1e-10);

  for (int d : options.dims) {
    if (d < 2) continue;
    const bool even = d % 2 == 0;
    for (int trial = 0; trial < options.trials; ++trial) {
      // core-linalg
      const Subspace w = rng.subspace(d, rng.pick(0, d));
      const Matrix p = projector(w).matrix();
      projector_idem.observe(max_abs(p * p - p));
      Matrix g = Matrix::NullaryExpr(d, d, [&]() { return rng.uniform(-1.0, 1.0); });
      const Spectrum sp = symmetric_spectrum(Matrix(g + g.transpose()));
      spectrum_orth.observe(max_abs(sp.vectors.transpose() * sp.vectors - Matrix::Identity(d, d)));
      skew_even.observe_ok(rank_with_tol(random_skew(d, rng.next_seed()).matrix(), 1e-9) % 2 == 0);

      // curvature-tensor
      const Model m = random_model(rng, d, trial);
      model_sym.observe(validate_symmetries(m.r).worst());
      const Matrix& am = m.a.matrix();
      for (int k = 0; k < 5; ++k) {
        const Vector s = rng.unit(d);
        const Vector wv = d > 1 ? rng.unit_orthogonal_to(s) : Vector::Zero(d);
        const Vector as = am * s;
        const Vector expected = m.kappa * wv + 3.0 * m.tau * wv.dot(as) * as;
        jacobi_formula.observe((jacobi_operator(m.r, s).matrix() * wv - expected).norm());
        const Matrix shifted = jacobi_operator(m.r, s).matrix() - m.kappa * (Matrix::Identity(d, d) - s * s.transpose());
        almost_iso.observe_ok(rank_with_tol(shifted, 1e-9) <= 1);
      }
      const Matrix ric = ricci(m.r).matrix();
      ricci_formula.observe(max_abs(ric - ((d - 1) * m.kappa * Matrix::Identity(d, d) - 3.0 * m.tau * am * am)));
      {
        const Matrix a2 = am * am;
        const bool scalar = max_abs(a2 - (a2.trace() / d) * Matrix::Identity(d, d)) < 1e-9;
        einstein_iff.observe_ok(einstein_check(m.r).is_einstein == scalar);
        if (even) {
          // a scalar-A² instance so both branches are exercised
          const double mu = rng.uniform(0.5, 1.5);
          const CurvatureTensor rj = build_model(m.kappa, m.tau, SkewEndomorphism(mu * standard_complex_structure(d).matrix()));
          einstein_iff.observe_ok(einstein_check(rj).is_einstein);
        }
      }

      // isotropy-analysis
      if (d >= 3) {
        try {
          const Decomposition dec = recover_decomposition(m.r);
          round_trip_kappa.observe(std::abs(dec.kappa - m.kappa));
          CurvatureTensor rebuilt = build_model(dec.kappa, dec.tau, dec.a);
          rebuilt -= m.r;
          round_trip_r.observe(rebuilt.frobenius_norm() / std::max(1.0, m.r.frobenius_norm()));

          const Matrix& ar = dec.a.matrix();
          const double scale = tensor_scale(m.r);
          for (int k = 0; k < 5; ++k) {
            const Matrix vw = rng.orthonormal(d, 2);
            const Vector v = vw.col(0);
            const Vector wv = vw.col(1);
            const double lv = extremal_curvature(m.r, dec.kappa, v);
            const double lw = extremal_curvature(m.r, dec.kappa, wv);
            equal_ratio.observe(std::abs((lv - dec.kappa) * (ar * wv).squaredNorm() -
                                         (lw - dec.kappa) * (ar * v).squaredNorm()) / scale);
            lambda_formula.observe(std::abs(lv - dec.kappa - 3.0 * dec.tau * (ar * v).squaredNorm()) / scale);
            const Vector as = ar * v;
            if (as.squaredNorm() > 1e-6) {
              const Vector pred = dec.kappa * wv + (lv - dec.kappa) * (wv.dot(as) / as.squaredNorm()) * as;
              jacobi_split.observe((jacobi_operator(m.r, v).matrix() * wv - pred).norm() / scale);
              Matrix span(d, 2);
              span.col(0) = v;
              span.col(1) = as;
              eigenspace.observe(largest_principal_angle(eigenspace_at(m.r, dec.kappa, v),
                                                         orthogonal_complement(span, d)));
            }
          }
        } catch (const Error&) {
          round_trip_r.observe(std::numeric_limits<double>::infinity());
        }
      }

      // kahler-classify
      if (even && d >= 4) {
        const ComplexStructure j = standard_complex_structure(d);
        const Matrix u = rng.unitary(d);
        const double kappa = rng.uniform(0.5, 2.0) * (rng.pick(0, 1) ? 1.0 : -1.0);
        CurvatureTensor kahler(d);
        std::vector<double> expect_mu;
        switch (trial % 3) {
          case 0: {  // constant holomorphic curvature
            kahler = kappa * (build_R1(d) + build_RA(SkewEndomorphism(j.matrix())));
            break;
          }
          case 1: {  // kappa = 0, holomorphic plane
            const double c = rng.uniform(0.5, 3.0) * (rng.pick(0, 1) ? 1.0 : -1.0);
            const Matrix a = u * block_skew(d, {1.0}).matrix() * u.transpose();
            kahler = c * build_RA(SkewEndomorphism(0.5 * (a - a.transpose())));
            break;
          }
          default: {
            if (d == 4) {
              const int tau = kappa > 0 ? 1 : -1;
              const double mu1 = rng.uniform(1.2, 2.5);
              const double mu2 = kappa / (tau * mu1);
              const Matrix a = u * block_skew(d, {mu1, mu2}).matrix() * u.transpose();
              kahler = build_model(kappa, tau, SkewEndomorphism(0.5 * (a - a.transpose())));
            } else {
              kahler = kappa * (build_R1(d) + build_RA(SkewEndomorphism(j.matrix())));
            }
          }
        }
        try {
          const KahlerClass cls = classify_kahler(kahler, j);
          const Decomposition dec = recover_decomposition(kahler);
          if (dec.tau != 0) {
            const BAnalysis ba = analyze_b(dec.a, j);
            dichotomy.observe_ok(ba.commute_type == CommuteType::Commute);
            for (const Subspace& plane : ba.eigenplanes) planes.observe(j_invariance_defect(plane, j));
          }
          if (const auto* c2 = std::get_if<KahlerCase2>(&cls)) {
            product.observe(std::abs(c2->mu1 * c2->mu2 - c2->kappa / c2->tau) / std::max(1.0, std::abs(c2->kappa)));
          } else if (const auto* c3 = std::get_if<KahlerCase3>(&cls)) {
            product.observe(std::abs(c3->mu * c3->mu - c3->kappa / c3->tau) / std::max(1.0, std::abs(c3->kappa)));
          } else if (const auto* c4 = std::get_if<KahlerCase4>(&cls)) {
            if (c4->c != 0.0) {
              const Subspace n = nullity_space(kahler);
              nullity.observe(n.dim() == d - 2 ? largest_principal_angle(n, orthogonal_complement(c4->w.basis(), d))
                                               : std::numeric_limits<double>::infinity());
            }
          }
        } catch (const Error&) {
          dichotomy.observe_ok(false);
        }
        // neither-type A must be rejected
        const SkewEndomorphism neither(j.matrix() + quaternion_j(d));
        try {
          classify_kahler(build_model(1.0, 1, neither), j);
          dichotomy.observe_ok(false);
        } catch (const Error& e) {
          dichotomy.observe_ok(e.code() == ErrorCode::NotKahler);
        }
      }

      // sphere-distribution
      {
        const int kernel_dim = trial % 2 == 0 ? d % 2 : std::min(d - 2, 2 + d % 2);
        const SkewEndomorphism a = rng.skew_with_kernel(d, kernel_dim);
        const Vector s = rng.unit(d);
        const Subspace ds = distribution_at(a, s);
        if (ds.dim() > 0) {
          const Vector x = ds.basis() * rng.unit(ds.dim());
          membership.observe(std::max(std::abs(x.dot(a.apply(s))), std::abs(s.dot(a.apply(x)))));
          std::vector<double> times(200);
          for (std::size_t t = 0; t < times.size(); ++t) times[t] = 6.283185307179586 * static_cast<double>(t) / 199.0;
          geodesy_tangent.observe(tangency_profile(a, s, x, times).max_abs);
          const Vector as = a.apply(s);
          if (as.norm() > 0.2) {
            // a unit w ⊥ s with |<w, As>| > 0.1
            const Vector w = (as / as.norm() + 0.5 * x).normalized();
            geodesy_transverse.observe_ok(tangency_profile(a, s, w, times).min_abs > 1e-3);
          }
        }
        if (d >= 3) {
          const FitResult fit = fit_skew_from_samples(sample_distribution(a, 40, rng.next_seed()));
          if (fit.gap > 1e-6) planted.observe(projective_angle(fit.a.matrix(), a.matrix()));
        }
        const Subspace kernel = kernel_of(a);
        if (kernel.dim() > 0 && kernel.dim() < d) {
          const Vector k = kernel.basis() * rng.unit(kernel.dim());
          const Matrix mb = orthogonal_complement(kernel.basis(), d).basis();
          const Vector mv = mb * rng.unit(static_cast<int>(mb.cols()));
          const Matrix proj_k = kernel.basis() * kernel.basis().transpose();
          // (1) K ⊂ D_m
          const Matrix dm = distribution_at(a, mv).basis();
          sphere_parts.observe(max_abs(proj_k - dm * (dm.transpose() * proj_k)));
          // (2) D_m ∩ T_m S_M has codimension one in T_m S_M
          sphere_parts.observe(std::abs(static_cast<double>(dm.cols() - kernel.dim()) -
                                        static_cast<double>(mb.cols() - 2)));
          // (3) M ⊂ D_k
          const Matrix dk = distribution_at(a, k).basis();
          sphere_parts.observe(max_abs(mb - dk * (dk.transpose() * mb)));
          // (4) singular set = S_K: D_k = T_k S, and a point off K is regular
          sphere_parts.observe(std::abs(static_cast<double>(dk.cols() - (d - 1))));
          sphere_parts.observe(std::abs(static_cast<double>(distribution_at(a, mv).dim() - (d - 2))));
        }
      }
    }
  }

  // Quaternion-j instance: anticommutes with J, satisfies the scalar identity, and is rejected.
  {
    const ComplexStructure j = standard_complex_structure(4);
    const SkewEndomorphism a(quaternion_j(4));
    skewcommute.observe_ok(commute_type(a, j) == CommuteType::Anticommute);
    for (int k = 0; k < options.trials; ++k) {
      const Vector x = rng.gaussian(4);
      const Vector xu = x / x.norm();
      const double axu = a.apply(xu).squaredNorm();
      skewcommute.observe_ok(std::abs(axu - axu * axu) < 1e-10);
    }
    try {
      classify_kahler(build_model(1.0, 1, a), j);
      skewcommute.observe_ok(false);
    } catch (const Error& e) {
      skewcommute.observe_ok(e.code() == ErrorCode::NotKahler);
    }
  }

  return {projector_idem.finish(),  spectrum_orth.finish(),  skew_even.finish(),       model_sym.finish(),
          jacobi_formula.finish(),  ricci_formula.finish(),  einstein_iff.finish(),    almost_iso.finish(),
          round_trip_kappa.finish(), round_trip_r.finish(),  equal_ratio.finish(),     lambda_formula.finish(),
          jacobi_split.finish(),    eigenspace.finish(),     dichotomy.finish(),       planes.finish(),
          product.finish(),         nullity.finish(),        skewcommute.finish(),     membership.finish(),
          geodesy_tangent.finish(), geodesy_transverse.finish(), planted.finish(),     sphere_parts.finish()};
}

}  // namespace curvlab
