#include "curvlab/io.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "curvlab/error.hpp"

namespace curvlab::io {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << text << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

json parse(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void require_schema(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "top-level value must be an object");
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer()) {
    throw Error(ErrorCode::ParseError, "missing integer schema_version");
  }
  if (j["schema_version"].get<int>() != kSchemaVersion) {
    throw Error(ErrorCode::SchemaVersionUnsupported,
                "schema_version " + std::to_string(j["schema_version"].get<int>()));
  }
}

int read_dim(const json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw Error(ErrorCode::ParseError, "missing integer dim");
  const int d = j["dim"].get<int>();
  if (d < 1 || d > 64) throw Error(ErrorCode::ParseError, "dim out of range: " + std::to_string(d));
  return d;
}

double read_number(const json& v, const char* what) {
  if (!v.is_number()) throw Error(ErrorCode::ParseError, std::string(what) + " must be numeric");
  return v.get<double>();
}

Vector read_vector(const json& v, int d, const char* what) {
  if (!v.is_array() || static_cast<int>(v.size()) != d) {
    throw Error(ErrorCode::ParseError, std::string(what) + " must be an array of length " + std::to_string(d));
  }
  Vector out(d);
  for (int i = 0; i < d; ++i) out(i) = read_number(v[static_cast<std::size_t>(i)], what);
  return out;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

json tensor_to_json(const CurvatureTensor& r) {
  return json{{"schema_version", kSchemaVersion},
              {"dim", r.dim()},
              {"basis", kBasisLiteral},
              {"convention", kConventionLiteral},
              {"components", r.components()}};
}

CurvatureTensor tensor_from_json(const json& j, double tol) {
  require_schema(j);
  const int d = read_dim(j);
  if (j.value("basis", std::string()) != kBasisLiteral) {
    throw Error(ErrorCode::ParseError, std::string("basis must be \"") + kBasisLiteral + "\"");
  }
  if (j.value("convention", std::string()) != kConventionLiteral) {
    throw Error(ErrorCode::ParseError, std::string("convention must be \"") + kConventionLiteral + "\"");
  }
  if (!j.contains("components") || !j["components"].is_array()) {
    throw Error(ErrorCode::ParseError, "missing components array");
  }
  const json& comps = j["components"];
  const std::size_t expected = static_cast<std::size_t>(d) * d * d * d;
  if (comps.size() != expected) {
    throw Error(ErrorCode::ParseError, "components has length " + std::to_string(comps.size()) + ", expected " +
                                           std::to_string(expected));
  }
  std::vector<double> values;
  values.reserve(expected);
  for (const json& v : comps) values.push_back(read_number(v, "component"));
  CurvatureTensor r(d, std::move(values));

  const SymmetryReport rep = validate_symmetries(r);
  const double bound = tol * std::max(1.0, r.max_abs());
  if (rep.antisymmetry_residual > bound) {
    throw Error(ErrorCode::SymmetryViolation, "antisymmetry residual " + std::to_string(rep.antisymmetry_residual));
  }
  if (rep.pair_exchange_residual > bound) {
    throw Error(ErrorCode::SymmetryViolation, "pair_exchange residual " + std::to_string(rep.pair_exchange_residual));
  }
  if (rep.bianchi_residual > bound) {
    throw Error(ErrorCode::SymmetryViolation, "bianchi residual " + std::to_string(rep.bianchi_residual));
  }
  return r;
}

CurvatureTensor load_tensor(const std::string& path, double tol) { return tensor_from_json(parse(path), tol); }

void save_tensor(const CurvatureTensor& r, const std::string& path) { write_file(path, tensor_to_json(r).dump()); }

DistributionSamples load_samples(const std::string& path) {
  const json j = parse(path);
  require_schema(j);
  const int d = read_dim(j);
  if (!j.contains("entries") || !j["entries"].is_array()) throw Error(ErrorCode::ParseError, "missing entries");
  std::vector<DistributionEntry> entries;
  for (const json& e : j["entries"]) {
    if (!e.is_object() || !e.contains("s") || !e.contains("tangents") || !e["tangents"].is_array()) {
      throw Error(ErrorCode::ParseError, "entry needs s and tangents");
    }
    DistributionEntry entry{read_vector(e["s"], d, "s"), {}};
    for (const json& t : e["tangents"]) entry.tangents.push_back(read_vector(t, d, "tangent"));
    entries.push_back(std::move(entry));
  }
  try {
    return DistributionSamples(d, std::move(entries));
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

void save_samples(const DistributionSamples& samples, const std::string& path) {
  json entries = json::array();
  for (const DistributionEntry& e : samples.entries()) {
    json tangents = json::array();
    for (const Vector& t : e.tangents) tangents.push_back(vector_to_json(t));
    entries.push_back(json{{"s", vector_to_json(e.s)}, {"tangents", std::move(tangents)}});
  }
  const json j{{"schema_version", kSchemaVersion}, {"dim", samples.dim()}, {"entries", std::move(entries)}};
  write_file(path, j.dump());
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j) + 0.0);  // no negative zeros
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix load_matrix(const std::string& path) {
  const json j = parse(path);
  require_schema(j);
  const int d = read_dim(j);
  if (!j.contains("matrix") || !j["matrix"].is_array() || static_cast<int>(j["matrix"].size()) != d) {
    throw Error(ErrorCode::ParseError, "matrix must have " + std::to_string(d) + " rows");
  }
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) m.row(i) = read_vector(j["matrix"][static_cast<std::size_t>(i)], d, "matrix row");
  return m;
}

void save_matrix(const Matrix& m, const std::string& path) {
  const json j{{"schema_version", kSchemaVersion}, {"dim", m.rows()}, {"matrix", matrix_to_json(m)}};
  write_file(path, j.dump());
}

std::string file_digest(const std::string& path) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : read_file(path)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

double default_tolerance() {
  if (const char* env = std::getenv("CURVLAB_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
    throw Error(ErrorCode::ParseError, std::string("CURVLAB_TOL is not a positive number: ") + env);
  }
  return kDefaultTol;
}

Report::Report(std::string command) {
  body_["command"] = std::move(command);
  body_["status"] = "ok";
}

void Report::fail(const std::string& status, const std::string& reason) {
  body_["status"] = status;
  body_["reason"] = reason;
}

bool Report::all_checks_pass() const {
  for (const auto& [name, ok] : checks_) {
    if (!ok) return false;
  }
  return true;
}

json Report::to_json() const {
  json out = body_;
  if (!checks_.empty()) {
    json checks = json::object();
    for (const auto& [name, ok] : checks_) checks[name] = ok;
    out["checks"] = std::move(checks);
  }
  return out;
}

std::string Report::render_json() const { return to_json().dump(2); }

std::string Report::render_text() const {
  std::ostringstream out;
  const json j = to_json();
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "checks") continue;
    out << std::left << std::setw(16) << it.key() << ' '
        << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
  }
  for (const auto& [name, ok] : checks_) {
    out << (ok ? "[pass] " : "[FAIL] ") << name << '\n';
  }
  return out.str();
}

}  // namespace curvlab::io
