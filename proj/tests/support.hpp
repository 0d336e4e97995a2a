#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <filesystem>
#include <string>

#include <unistd.h>

#include <gtest/gtest.h>

#include "curvlab/curvature.hpp"
#include "curvlab/error.hpp"
#include "curvlab/linalg.hpp"

namespace curvlab::testing {

inline Vector e(int d, int i) { return Vector::Unit(d, i); }

// A e1 = e3, A e2 = -e4, A e3 = -e1, A e4 = e2; anticommutes with the standard J.
inline SkewEndomorphism quaternion_j(int d = 4) {
  Matrix q = Matrix::Zero(d, d);
  q(2, 0) = 1.0;
  q(0, 2) = -1.0;
  q(3, 1) = -1.0;
  q(1, 3) = 1.0;
  return SkewEndomorphism(q);
}

inline SkewEndomorphism standard_j_skew(int d) { return SkewEndomorphism(standard_complex_structure(d).matrix()); }

// kappa = 1, tau = 1, A = 2 J∘π^{W1} + 0.5 J∘π^{W2} in d = 4.
inline CurvatureTensor blocks_model() { return build_model(1.0, 1, block_skew(4, {2.0, 0.5})); }

// kappa (R_1 + R_J).
inline CurvatureTensor complex_space_form(double kappa, int d) {
  const SkewEndomorphism a(std::sqrt(std::abs(kappa)) * standard_complex_structure(d).matrix());
  return build_model(kappa, kappa > 0 ? 1 : -1, a);
}

inline ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& err) {
    return err.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::IoError;
}

inline Subspace span(std::initializer_list<Vector> vs) {
  Matrix m(vs.begin()->size(), static_cast<Eigen::Index>(vs.size()));
  Eigen::Index c = 0;
  for (const Vector& v : vs) m.col(c++) = v;
  return column_span(m);
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("curvlab-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace curvlab::testing
