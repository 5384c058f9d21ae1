#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gzk/manifest.hpp"

namespace {

namespace fs = std::filesystem;

const fs::path work = fs::temp_directory_path() / "gzk_cli_test";

int run(const std::string& args) {
  const std::string cmd = "cd " + work.string() + " && " + GZK_BINARY + " " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    fs::remove_all(work);
    fs::create_directories(work);
    std::ofstream(work / "run.cfg") << "k = 2\nnx = 32\nny = 32\nLx = 25.132741228718345\nLy = 25.132741228718345\n"
                                       "T = 0.05\ndt = 0.01\nsnapshot_stride = 2\ndiagnostic_stride = 1\n";
  }
  static void TearDownTestSuite() { fs::remove_all(work); }
};

TEST_F(Cli, UnknownFlagIsUsageError) {
  EXPECT_EQ(run("evolve --config run.cfg --bogus"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run(""), 2);
}

TEST_F(Cli, BadConfigIsUsageError) {
  std::ofstream(work / "bad.cfg") << "k = 0\nnx = 32\nny = 32\nLx = 1\nLy = 1\nT = 1\ndt = 0.1\n";
  EXPECT_EQ(run("evolve --config bad.cfg --out bad"), 2);
}

TEST_F(Cli, EvolveWritesManifestDiagnosticsAndSnapshots) {
  ASSERT_EQ(run("evolve --config run.cfg --seed 3 --band 4 --out ev"), 0);
  const auto m = gzk::RunManifest::read(work / "ev" / "manifest.json");
  EXPECT_EQ(m.command, "evolve");
  EXPECT_EQ(m.seed, 3u);
  EXPECT_EQ(m.config.at("band"), "4");
  EXPECT_EQ(m.version, gzk::version_string);
  for (const auto& p : m.outputs) EXPECT_TRUE(fs::exists(work / p)) << p;
  EXPECT_TRUE(fs::exists(work / "ev" / "diagnostics.csv"));
  EXPECT_TRUE(fs::exists(work / "ev" / "snapshots" / "snap_000000.gzk"));
  std::size_t manifests = 0;
  for (const auto& e : fs::recursive_directory_iterator(work / "ev")) manifests += e.path().filename() == "manifest.json";
  EXPECT_EQ(manifests, 1u);
}

TEST_F(Cli, RerunReproducesOutputsBitwise) {
  ASSERT_EQ(run("evolve --config run.cfg --seed 9 --band 4 --out first"), 0);
  ASSERT_EQ(run("rerun --manifest first/manifest.json --out second"), 0);
  EXPECT_EQ(slurp(work / "first" / "diagnostics.csv"), slurp(work / "second" / "diagnostics.csv"));
  EXPECT_EQ(slurp(work / "first" / "snapshots" / "snap_000001.gzk"),
            slurp(work / "second" / "snapshots" / "snap_000001.gzk"));
}

TEST_F(Cli, NormsRejectsCorruptSnapshot) {
  std::ofstream(work / "junk.gzk") << "NOPE this is not a snapshot";
  EXPECT_EQ(run("norms --input junk.gzk --out junk"), 1);
  ASSERT_EQ(run("evolve --config run.cfg --out for_norms"), 0);
  EXPECT_EQ(run("norms --input for_norms/snapshots/snap_000000.gzk --s 0,1 --out norms"), 0);
  EXPECT_NE(slurp(work / "norms" / "norms.csv").find("Hdot^1,"), std::string::npos);
}

TEST_F(Cli, ExperimentExitCodeFollowsVerdict) {
  EXPECT_EQ(run("experiment scaling --n 32 --band 4 --t 0.05 --dt 0.01 --out sc"), 0);
  EXPECT_EQ(gzk::RunManifest::read(work / "sc" / "manifest.json").verdict, "pass");
  EXPECT_TRUE(fs::exists(work / "sc" / "verdict.json"));
  EXPECT_TRUE(fs::exists(work / "sc" / "static_norms.csv"));
  const int code = run("experiment highlow --n 64 --N 2,4,8 --T0 0.01 --out hl");
  const auto verdict = gzk::RunManifest::read(work / "hl" / "manifest.json").verdict;
  EXPECT_EQ(code, verdict == "fail" ? 1 : 0);
  EXPECT_EQ(run("experiment highlow --s 0.5 --out hl_bad"), 2);
}

TEST_F(Cli, ProbeWritesCsv) {
  ASSERT_EQ(run("probe --kind smoothing --n 32 --count 10 --band 4 --time-samples 8 --out pr"), 0);
  const auto csv = slurp(work / "pr" / "probe.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "kind,sample_seed,ratio,grid,T");
  EXPECT_EQ(run("probe --kind maximal_L2 --s 0.5 --n 32 --out pr_bad"), 2);
}

}  // namespace
