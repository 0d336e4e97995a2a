#include "curvlab/generators.hpp"

#include <complex>

#include "curvlab/error.hpp"

namespace curvlab::gen {

Vector Sampler::gaussian(int d) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = normal(rng_);
  return v;
}

Vector Sampler::unit(int d) {
  Vector v = gaussian(d);
  while (v.norm() < 1e-6) v = gaussian(d);
  return v / v.norm();
}

Matrix Sampler::orthonormal(int d, int k) {
  Matrix g(d, k);
  for (int c = 0; c < k; ++c) g.col(c) = gaussian(d);
  const Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, k);
  return q;
}

Vector Sampler::unit_orthogonal_to(const Matrix& basis) {
  const auto d = static_cast<int>(basis.rows());
  for (;;) {
    Vector v = gaussian(d);
    if (basis.cols() > 0) v -= basis * (basis.transpose() * v);
    if (v.norm() > 1e-3) return v / v.norm();
  }
}

Matrix Sampler::unitary(int d) {
  if (d % 2 != 0) throw Error(ErrorCode::OddDimension, "unitary needs even d");
  const int n = d / 2;
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = {normal(rng_), normal(rng_)};
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  const Eigen::MatrixXcd u = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  // complex coordinate z_p = x_{2p} + i x_{2p+1}; multiplication by i is the standard J
  Matrix out(d, d);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const double a = u(p, q).real();
      const double b = u(p, q).imag();
      out(2 * p, 2 * q) = a;
      out(2 * p, 2 * q + 1) = -b;
      out(2 * p + 1, 2 * q) = b;
      out(2 * p + 1, 2 * q + 1) = a;
    }
  return out;
}

SkewEndomorphism Sampler::skew_with_kernel(int d, int kernel_dim) {
  if ((d - kernel_dim) % 2 != 0 || kernel_dim < 0 || kernel_dim > d) {
    throw Error(ErrorCode::PreconditionViolated, "rank of a skew matrix must be even");
  }
  Matrix core = Matrix::Zero(d, d);
  for (int b = 0; b < (d - kernel_dim) / 2; ++b) {
    const double w = uniform(0.3, 2.0) * (pick(0, 1) ? 1.0 : -1.0);
    core(2 * b + 1, 2 * b) = w;
    core(2 * b, 2 * b + 1) = -w;
  }
  const Matrix q = orthonormal(d, d);
  const Matrix a = q * core * q.transpose();
  return SkewEndomorphism(0.5 * (a - a.transpose()));
}

SkewEndomorphism Sampler::basis_blocks(int d, int zero_blocks) {
  Matrix a = Matrix::Zero(d, d);
  for (int b = 0; b < d / 2 - zero_blocks; ++b) {
    const double w = uniform(0.3, 2.0) * (pick(0, 1) ? 1.0 : -1.0);
    a(2 * b + 1, 2 * b) = w;
    a(2 * b, 2 * b + 1) = -w;
  }
  return SkewEndomorphism(a);
}

}  // namespace curvlab::gen
