#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "curvlab/curvature.hpp"
#include "curvlab/distribution.hpp"

namespace curvlab::io {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kBasisLiteral = "orthonormal-standard";
inline constexpr const char* kConventionLiteral = "R[i][j][k][l] = <R(e_i,e_j)e_k, e_l>";

/// Reads a TensorFile and validates the curvature symmetries at `tol`
/// (relative to max(1, max |component|)).
CurvatureTensor load_tensor(const std::string& path, double tol = kDefaultTol);
void save_tensor(const CurvatureTensor& r, const std::string& path);

nlohmann::json tensor_to_json(const CurvatureTensor& r);
CurvatureTensor tensor_from_json(const nlohmann::json& j, double tol = kDefaultTol);

DistributionSamples load_samples(const std::string& path);
void save_samples(const DistributionSamples& samples, const std::string& path);

/// {"schema_version": 1, "dim": d, "matrix": [[row], ...]}.
Matrix load_matrix(const std::string& path);
void save_matrix(const Matrix& m, const std::string& path);

/// FNV-1a 64-bit digest of the file bytes, as 16 hex digits.
std::string file_digest(const std::string& path);

nlohmann::json matrix_to_json(const Matrix& m);

/// Default tolerance, overridden by the CURVLAB_TOL environment variable.
double default_tolerance();

/// Command output: flat JSON object with a stable (sorted) key order.
class Report {
 public:
  explicit Report(std::string command);

  void set(const std::string& key, nlohmann::json value) { body_[key] = std::move(value); }
  void check(const std::string& name, bool passed) { checks_[name] = passed; }
  void fail(const std::string& status, const std::string& reason);

  bool all_checks_pass() const;
  nlohmann::json to_json() const;
  std::string render_json() const;
  std::string render_text() const;

 private:
  nlohmann::json body_ = nlohmann::json::object();
  std::map<std::string, bool> checks_;
};

}  // namespace curvlab::io
