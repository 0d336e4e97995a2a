#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "curvlab/io.hpp"
#include "support.hpp"

using namespace curvlab;
using curvlab::testing::code_of;
using nlohmann::json;

namespace {

class IoTest : public ::testing::Test {
 protected:
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  std::filesystem::path dir_ = curvlab::testing::scratch_dir("io");
};

}  // namespace

TEST_F(IoTest, TensorRoundTripIsBitwise) {
  const CurvatureTensor r = build_model(-1.0 / 3.0, 1, random_skew(4, 3));
  io::save_tensor(r, path("t.json"));
  EXPECT_EQ(io::load_tensor(path("t.json")).components(), r.components());
  io::save_tensor(build_R1(4), path("r1.json"));
  EXPECT_EQ(io::load_tensor(path("r1.json")).components(), build_R1(4).components());
}

TEST_F(IoTest, WrongComponentCount) {
  json j = io::tensor_to_json(build_R1(3));
  j["components"].erase(0);
  write("short.json", j.dump());
  EXPECT_EQ(code_of([&] { io::load_tensor(path("short.json")); }), ErrorCode::ParseError);
}

TEST_F(IoTest, AntisymmetryBreakNamed) {
  json j = io::tensor_to_json(build_R1(3));
  j["components"][1] = 0.5;  // R[0][0][0][1]
  write("bad.json", j.dump());
  try {
    io::load_tensor(path("bad.json"));
    FAIL() << "expected SymmetryViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SymmetryViolation);
    EXPECT_NE(std::string(e.what()).find("antisymmetry"), std::string::npos);
  }
}

TEST_F(IoTest, SchemaAndHeaderChecks) {
  json j = io::tensor_to_json(build_R1(2));
  j["schema_version"] = 2;
  write("v2.json", j.dump());
  EXPECT_EQ(code_of([&] { io::load_tensor(path("v2.json")); }), ErrorCode::SchemaVersionUnsupported);
  j = io::tensor_to_json(build_R1(2));
  j["convention"] = "R(e_i,e_j,e_k,e_l)";
  write("conv.json", j.dump());
  EXPECT_EQ(code_of([&] { io::load_tensor(path("conv.json")); }), ErrorCode::ParseError);
  write("junk.json", "{not json");
  EXPECT_EQ(code_of([&] { io::load_tensor(path("junk.json")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { io::load_tensor(path("missing.json")); }), ErrorCode::IoError);
}

TEST_F(IoTest, SamplesRoundTrip) {
  const DistributionSamples s = sample_distribution(random_skew(4, 1), 6, 2);
  io::save_samples(s, path("s.json"));
  const DistributionSamples back = io::load_samples(path("s.json"));
  ASSERT_EQ(back.entries().size(), s.entries().size());
  for (std::size_t i = 0; i < s.entries().size(); ++i) {
    EXPECT_EQ(back.entries()[i].s, s.entries()[i].s);
    ASSERT_EQ(back.entries()[i].tangents.size(), s.entries()[i].tangents.size());
  }
}

TEST_F(IoTest, MatrixRoundTrip) {
  const Matrix m = random_skew(3, 4).matrix();
  io::save_matrix(m, path("m.json"));
  EXPECT_EQ(io::load_matrix(path("m.json")), m);
  write("ragged.json", R"({"schema_version":1,"dim":2,"matrix":[[0,1],[1]]})");
  EXPECT_EQ(code_of([&] { io::load_matrix(path("ragged.json")); }), ErrorCode::ParseError);
}

TEST_F(IoTest, DigestIsStable) {
  write("a.txt", "abc");
  write("b.txt", "abd");
  EXPECT_EQ(io::file_digest(path("a.txt")), io::file_digest(path("a.txt")));
  EXPECT_NE(io::file_digest(path("a.txt")), io::file_digest(path("b.txt")));
  EXPECT_EQ(io::file_digest(path("a.txt")).size(), 16u);
}

TEST(ToleranceTest, EnvironmentOverride) {
  ::unsetenv("CURVLAB_TOL");
  EXPECT_EQ(io::default_tolerance(), kDefaultTol);
  ::setenv("CURVLAB_TOL", "1e-6", 1);
  EXPECT_EQ(io::default_tolerance(), 1e-6);
  ::setenv("CURVLAB_TOL", "-3", 1);
  EXPECT_EQ(code_of([] { io::default_tolerance(); }), ErrorCode::ParseError);
  ::unsetenv("CURVLAB_TOL");
}

TEST(ReportTest, JsonAndChecks) {
  io::Report r("classify");
  r.set("case", 3);
  r.check("b", true);
  EXPECT_TRUE(r.all_checks_pass());
  r.check("a", false);
  EXPECT_FALSE(r.all_checks_pass());
  const json j = json::parse(r.render_json());
  EXPECT_EQ(j["command"], "classify");
  EXPECT_EQ(j["case"], 3);
  EXPECT_EQ(j["checks"]["a"], false);
  r.fail("rejected", "NotKahler");
  EXPECT_EQ(r.to_json()["reason"], "NotKahler");
}
