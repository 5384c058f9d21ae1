#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "gzk/config.hpp"
#include "gzk/manifest.hpp"

namespace {

using namespace gzk;

const char* minimal =
    "k=2\nnx=256\nny=256\nLx=100.53096491\nLy=100.53096491\nT=1.0\ndt=0.001\n";

TEST(Config, MinimalFileIsValid) {
  const auto c = parse_config_text(minimal);
  EXPECT_EQ(c.k, 2);
  EXPECT_EQ(c.grid.nx(), 256u);
  EXPECT_EQ(c.grid.ny(), 256u);
  EXPECT_DOUBLE_EQ(c.grid.lx(), 100.53096491);
  EXPECT_EQ(c.t_end, 1.0);
  EXPECT_EQ(c.dt, 0.001);
  EXPECT_EQ(c.integrator, Integrator::if_rk4);
  EXPECT_TRUE(c.dealias);
  EXPECT_EQ(c.form, NonlinearForm::conservative);
}

TEST(Config, CommentsBlankLinesAndOptionalKeys) {
  const std::string text = std::string("# run\n\n") + minimal +
                           "integrator = etd_rk4   # exponential\ndealias = false\ndt_policy = cfl\ncfl = 0.3\n"
                           "snapshot_stride = 7\nform = direct\n";
  const auto c = parse_config_text(text);
  EXPECT_EQ(c.integrator, Integrator::etd_rk4);
  EXPECT_FALSE(c.dealias);
  EXPECT_EQ(c.dt_policy, DtPolicy::cfl);
  EXPECT_EQ(c.cfl, 0.3);
  EXPECT_EQ(c.snapshot_stride, 7u);
  EXPECT_EQ(c.form, NonlinearForm::direct);
}

TEST(Config, Errors) {
  const std::string base = minimal;
  EXPECT_THROW(parse_config_text("k=0\nnx=256\nny=256\nLx=1\nLy=1\nT=1\ndt=0.1\n"), ConfigError);
  EXPECT_THROW(parse_config_text(base + "k=3\n"), ConfigError);
  EXPECT_THROW(parse_config_text(base + "dtt=0.1\n"), ConfigError);
  EXPECT_THROW(parse_config_text("k=2\nnx=256\nny=256\nLx=1\nLy=1\nT=1\n"), ConfigError);
  EXPECT_THROW(parse_config_text("k=two\nnx=256\nny=256\nLx=1\nLy=1\nT=1\ndt=0.1\n"), ConfigError);
  EXPECT_THROW(parse_config_text("k=2\nnx=256\nny=256\nLx=1\nLy=1x\nT=1\ndt=0.1\n"), ConfigError);
  EXPECT_THROW(parse_config_text("k=2\nnx=7\nny=256\nLx=1\nLy=1\nT=1\ndt=0.1\n"), ConfigError);
  EXPECT_THROW(parse_config_text(base + "integrator = euler\n"), ConfigError);
  EXPECT_THROW(parse_config_text(base + "dealias = maybe\n"), ConfigError);
  EXPECT_THROW(parse_config_text(base + "diagnostic_stride = 0\n"), ConfigError);
  EXPECT_THROW(parse_config_text(base + "just a line\n"), ConfigError);
  EXPECT_THROW(parse_config("/nonexistent/run.cfg"), ConfigError);
}

TEST(Config, SerializeRoundTripIsIdempotent) {
  const std::string text = std::string(minimal) + "heuristic_gamma = 0.41666666666666669\ncfl=0.1\n";
  const std::string once = serialize_config(parse_config_text(text));
  const std::string twice = serialize_config(parse_config_text(once));
  EXPECT_EQ(once, twice);
  const auto c = parse_config_text(once);
  EXPECT_EQ(c.grid.lx(), parse_config_text(text).grid.lx());
  EXPECT_EQ(c.heuristic_gamma, 5.0 / 12.0);
}

TEST(Config, ReadsFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "gzk_run.cfg";
  std::ofstream(path) << minimal;
  EXPECT_EQ(parse_config(path.string()).k, 2);
  std::filesystem::remove(path);
}

TEST(Manifest, JsonRoundTrip) {
  RunManifest m;
  m.command = "evolve";
  m.argv = {"gzk", "evolve", "--config", "run.cfg"};
  m.config = {{"k", "2"}, {"dt", "0.001"}};
  m.seed = 42;
  m.started = utc_timestamp();
  m.finished = utc_timestamp();
  m.outputs = {"diagnostics.csv"};
  m.verdict = "report-only";
  const auto dir = std::filesystem::temp_directory_path() / "gzk_manifest_test";
  std::filesystem::create_directories(dir);
  m.write(dir);
  const auto back = RunManifest::read(dir / "manifest.json");
  EXPECT_EQ(back.to_json(), m.to_json());
  EXPECT_EQ(back.started.size(), 20u);
  std::filesystem::remove_all(dir);
}

}  // namespace
