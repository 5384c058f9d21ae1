#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "gzk/probes.hpp"

namespace {

using namespace gzk;
constexpr double pi = std::numbers::pi;

TEST(Probe, RejectsParametersOutsideTheEstimates) {
  const auto g = make_square_grid(32, 8 * pi);
  ProbeParams p;
  p.band = 4;
  p.T = 1.5;
  EXPECT_THROW(estimate_probe(g, p), std::invalid_argument);
  p = {};
  p.count = 9;
  EXPECT_THROW(estimate_probe(g, p), std::invalid_argument);
  p = {};
  p.kind = ProbeKind::strichartz;
  p.epsilon = 0.5;
  EXPECT_THROW(estimate_probe(g, p), std::invalid_argument);
  p.epsilon = 0.2;
  p.theta = 1.1;
  EXPECT_THROW(estimate_probe(g, p), std::invalid_argument);
  p = {};
  p.kind = ProbeKind::maximal_l4;
  p.s1 = 0.25;
  EXPECT_THROW(estimate_probe(g, p), std::invalid_argument);
  p.s1 = 0.3;
  p.r1 = 0.5;
  EXPECT_THROW(estimate_probe(g, p), std::invalid_argument);
  p = {};
  p.kind = ProbeKind::maximal_l2;
  p.s = 0.75;
  EXPECT_THROW(estimate_probe(g, p), std::invalid_argument);
  EXPECT_THROW(parse_probe_kind("bogus"), std::invalid_argument);
}

TEST(Probe, ZeroFieldIsRejected) {
  const auto g = make_square_grid(16, 2 * pi);
  ProbeParams p;
  EXPECT_THROW(detail::probe_ratio(Field(g, Representation::physical), p, DispersionSymbol(g)), std::invalid_argument);
}

TEST(Probe, StrichartzAtThetaZeroIsUnitarity) {
  const auto g = make_square_grid(64, 8 * pi);
  ProbeParams p;
  p.kind = ProbeKind::strichartz;
  p.theta = 0.0;
  p.epsilon = 0.3;
  p.count = 10;
  p.band = 8;
  p.time_samples = 16;
  const auto r = estimate_probe(g, p);
  for (const auto& s : r.samples) EXPECT_NEAR(s.ratio, 1.0, 1e-12);
}

TEST(Probe, SmoothingMatchesSingleModeClosedForm) {
  // f = cos(2x) on a 2pi box: d_x U(t) f = -2 sin(2x + 8t). Over T = 2pi/8
  // the rectangle rule integrates sin^2 exactly, so for every x the inner
  // norm is sqrt(Ly * 4 * T/2) and the ratio is 2 sqrt(T/Lx).
  const auto g = make_square_grid(32, 2 * pi);
  const Field f = Field::from_function(g, [](double x, double) { return std::cos(2 * x); });
  ProbeParams p;
  p.T = 2 * pi / 8;
  p.time_samples = 24;
  EXPECT_NEAR(detail::probe_ratio(f, p, DispersionSymbol(g)), 2 * std::sqrt(p.T / (2 * pi)), 1e-12);
}

TEST(Probe, MaximalRatiosOfConstantData) {
  const auto g = make_grid(32, 16, 2 * pi, 4 * pi);
  const Field f = Field::from_function(g, [](double, double) { return 0.7; });
  const double lx = g.lx(), ly = g.ly();
  ProbeParams p;
  p.time_samples = 8;
  p.kind = ProbeKind::maximal_l2;
  EXPECT_NEAR(detail::probe_ratio(f, p, DispersionSymbol(g)), 1.0 / std::sqrt(ly), 1e-12);
  p.kind = ProbeKind::maximal_l4;
  EXPECT_NEAR(detail::probe_ratio(f, p, DispersionSymbol(g)), std::pow(lx, 0.25) / std::sqrt(lx * ly), 1e-12);
}

TEST(Probe, DeterministicAndIndependentOfThreadCount) {
  const auto g = make_square_grid(32, 8 * pi);
  ProbeParams p;
  p.kind = ProbeKind::maximal_l4;
  p.band = 6;
  p.count = 12;
  p.time_samples = 16;
  setenv("GZK_THREADS", "1", 1);
  const auto a = estimate_probe(g, p);
  setenv("GZK_THREADS", "3", 1);
  const auto b = estimate_probe(g, p);
  unsetenv("GZK_THREADS");
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].seed, p.seed + i);
    EXPECT_EQ(a.samples[i].ratio, b.samples[i].ratio);
  }
  EXPECT_EQ(a.max, b.max);
}

TEST(Probe, MaximaStableUnderRefinement) {
  for (auto kind : {ProbeKind::smoothing, ProbeKind::strichartz, ProbeKind::maximal_l4, ProbeKind::maximal_l2}) {
    ProbeParams p;
    p.kind = kind;
    p.band = 8;
    p.count = 10;
    p.time_samples = 64;
    const auto lo = estimate_probe(make_square_grid(64, 8 * pi), p);
    const auto hi = estimate_probe(make_square_grid(128, 8 * pi), p);
    EXPECT_TRUE(std::isfinite(lo.max));
    EXPECT_NEAR(hi.max / lo.max, 1.0, 0.2) << probe_name(kind);
  }
}

TEST(Probe, CsvColumns) {
  const auto g = make_square_grid(32, 8 * pi);
  ProbeParams p;
  p.band = 4;
  p.count = 10;
  p.time_samples = 8;
  const auto r = estimate_probe(g, p);
  const auto path = (std::filesystem::temp_directory_path() / "gzk_probe.csv").string();
  write_probe_csv(path, {r});
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "kind,sample_seed,ratio,grid,T");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("smoothing,1,", 0), 0u);
  EXPECT_NE(line.find(",32x32,0.5"), std::string::npos);
  std::size_t rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 10u);
  std::filesystem::remove(path);
}

}  // namespace
