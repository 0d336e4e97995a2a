#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#include "support.hpp"

using nlohmann::json;

namespace {

struct Invocation {
  int code;
  std::string out;
};

Invocation invoke(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + CURVLAB_CLI + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class CliTest : public ::testing::Test {
 protected:
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::filesystem::path dir_ = curvlab::testing::scratch_dir("cli");
};

}  // namespace

TEST_F(CliTest, GenerateCase3AndClassify) {
  ASSERT_EQ(invoke("generate --dim 6 --kappa 1 --tau 1 --A J --out " + path("c3.json")).code, 0);
  const Invocation run = invoke("classify " + path("c3.json") + " --format json");
  ASSERT_EQ(run.code, 0);
  const json j = json::parse(run.out);
  EXPECT_EQ(j["case"], 3);
  EXPECT_NEAR(j["kappa"].get<double>(), 1.0, 1e-10);
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["input_digest"].get<std::string>().size(), 16u);
}

TEST_F(CliTest, GenerateConventionViolation) {
  const Invocation run = invoke("generate --dim 4 --kappa 2 --tau 0 --A J --format json --out " + path("x.json"));
  EXPECT_EQ(run.code, 1);
  EXPECT_EQ(json::parse(run.out)["reason"], "ConventionViolation");
}

TEST_F(CliTest, GenerateRandomKappaZeroScans) {
  ASSERT_EQ(invoke("generate --dim 4 --kappa 0 --tau 1 --A random:7 --out " + path("r.json")).code, 0);
  const Invocation run = invoke("decompose " + path("r.json") + " --format json");
  ASSERT_EQ(run.code, 0);
  EXPECT_NEAR(json::parse(run.out)["kappa"].get<double>(), 0.0, 1e-9);
}

TEST_F(CliTest, R1WithJRejected) {
  ASSERT_EQ(invoke("generate --dim 4 --kappa 1 --tau 0 --out " + path("r1.json")).code, 0);
  const Invocation run = invoke("classify " + path("r1.json") + " --J standard --format json");
  EXPECT_EQ(run.code, 2);
  EXPECT_EQ(json::parse(run.out)["reason"], "NotKahler");
}

TEST_F(CliTest, CorruptFileExitsOne) {
  std::ofstream(path("bad.json")) << "{\"schema_version\": 1, \"dim\": 4, \"components\": [1, 2";
  EXPECT_EQ(invoke("classify " + path("bad.json")).code, 1);
  EXPECT_EQ(invoke("classify " + path("nope.json")).code, 1);
  EXPECT_EQ(invoke("decompose " + path("bad.json")).code, 1);
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(invoke("").code, 1);
  EXPECT_EQ(invoke("classify").code, 1);
  EXPECT_EQ(invoke("generate --dim 4 --kappa 1 --tau 1 --A bogus:1 --out " + path("z.json")).code, 1);
  EXPECT_EQ(invoke("classify x.json --format yaml").code, 1);
  EXPECT_EQ(invoke("--help").code, 0);
}

TEST_F(CliTest, DecomposeCase2) {
  ASSERT_EQ(invoke("generate --dim 4 --kappa 1 --tau 1 --A blocks:2,0.5 --out " + path("c2.json")).code, 0);
  const Invocation run = invoke("decompose " + path("c2.json") + " --format json");
  ASSERT_EQ(run.code, 0);
  EXPECT_LT(json::parse(run.out)["residual"].get<double>(), 1e-10);
}

TEST_F(CliTest, SampleAndFitDistribution) {
  ASSERT_EQ(invoke("sample-distribution --dim 4 --A J --n 40 --out " + path("s.json")).code, 0);
  const Invocation run = invoke("fit-distribution " + path("s.json") + " --format json");
  ASSERT_EQ(run.code, 0);
  const json j = json::parse(run.out);
  EXPECT_GT(j["gap"].get<double>(), 0.01);
  EXPECT_LT(j["residual"].get<double>(), 1e-12);
}

TEST_F(CliTest, ToleranceFromEnvironment) {
  ASSERT_EQ(invoke("generate --dim 4 --kappa 1 --tau 1 --A J --out " + path("t.json")).code, 0);
  const Invocation run = invoke("classify " + path("t.json") + " --format json");
  EXPECT_EQ(json::parse(run.out)["tol"], 1e-9);
  const Invocation env = invoke("classify " + path("t.json") + " --format json", "CURVLAB_TOL=1e-7");
  EXPECT_EQ(json::parse(env.out)["tol"], 1e-7);
  EXPECT_EQ(invoke("classify " + path("t.json"), "CURVLAB_TOL=abc").code, 1);
}

TEST_F(CliTest, LemmaSuite) {
  const Invocation run = invoke("lemma-suite --dims 4,6 --trials 50 --seed 7");
  EXPECT_EQ(run.code, 0);
  EXPECT_EQ(run.out.find("FAIL"), std::string::npos);
}
