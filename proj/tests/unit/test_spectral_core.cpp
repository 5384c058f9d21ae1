#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "gzk/field.hpp"
#include "gzk/grid.hpp"
#include "gzk/norms.hpp"
#include "gzk/random_field.hpp"
#include "gzk/snapshot.hpp"
#include "gzk/spectral_ops.hpp"
#include "gzk/split.hpp"

namespace {

using namespace gzk;
constexpr double pi = std::numbers::pi;

Field white_noise(const GridSpec& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> values(g.size());
  for (auto& v : values) v = normal(rng);
  return Field::from_real(g, values);
}

Field mean_free(Field f) {
  Field s = to_spectral(f);
  s[0] = 0.0;
  return real_part(to_physical(s));
}

double max_abs_difference(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TEST(Grid, IntegerLatticeOnTwoPiBox) {
  const auto g = make_grid(8, 8, 2 * pi, 2 * pi);
  std::vector<double> sorted = g.xi_lattice();
  std::sort(sorted.begin(), sorted.end());
  for (int j = -4; j <= 3; ++j) EXPECT_NEAR(sorted[static_cast<std::size_t>(j + 4)], j, 1e-14);
}

TEST(Grid, SpacingFollowsBoxLength) {
  const auto g = make_grid(16, 8, 4 * pi, 2 * pi);
  EXPECT_NEAR(g.xi(1) - g.xi(0), 0.5, 1e-15);
  EXPECT_NEAR(g.eta(1) - g.eta(0), 1.0, 1e-15);
  EXPECT_NEAR(g.dx() * 16, 4 * pi, 1e-14);
}

TEST(Grid, RejectsBadResolutionsAndBoxes) {
  EXPECT_THROW(make_grid(7, 8, 1, 1), std::invalid_argument);
  EXPECT_THROW(make_grid(6, 8, 1, 1), std::invalid_argument);
  EXPECT_THROW(make_grid(8, 8, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(make_grid(8, 8, 1, -2.0), std::invalid_argument);
}

TEST(Grid, LatticeSymmetricExceptNyquist) {
  const auto g = make_grid(16, 12, 3.0, 5.0);
  for (std::size_t j = 0; j < g.nx(); ++j) {
    if (j == g.nx() / 2) {
      EXPECT_LT(g.xi(j), 0.0);
      continue;
    }
    EXPECT_DOUBLE_EQ(g.xi(j), -g.xi((g.nx() - j) % g.nx()));
  }
}

TEST(Transform, ConstantConcentratesInZeroMode) {
  const auto g = make_grid(16, 16, 3.0, 4.0);
  const Field one = Field::from_function(g, [](double, double) { return 1.0; });
  const Field s = to_spectral(one);
  EXPECT_NEAR(s[0].real(), g.area(), 1e-12);
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LT(std::abs(s[i]), 1e-12);
}

TEST(Transform, SingleCosineHasTwoConjugateModes) {
  const auto g = make_grid(32, 16, 2 * pi, 2 * pi);
  const Field f = Field::from_function(g, [](double x, double) { return std::cos(3 * x); });
  const Field s = to_spectral(f);
  int nonzero = 0;
  for (std::size_t i = 0; i < s.size(); ++i) nonzero += std::abs(s[i]) > 1e-10 ? 1 : 0;
  EXPECT_EQ(nonzero, 2);
  const cplx plus = s.at(g.column_of(3), 0);
  const cplx minus = s.at(g.column_of(-3), 0);
  EXPECT_NEAR(std::abs(plus - std::conj(minus)), 0.0, 1e-12);
}

TEST(Transform, RoundTripAndRealityForRandomFields) {
  const auto g = make_grid(64, 48, 7.0, 5.0);
  for (unsigned seed = 0; seed < 10; ++seed) {
    const Field f = white_noise(g, seed);
    const Field s = to_spectral(f);
    EXPECT_LT(hermitian_defect(s), 1e-13);
    const Field back = to_physical(s);
    EXPECT_LE(max_abs_difference(back, f) / sup_norm(f), 1e-13);
    double max_im = 0.0;
    for (const auto& z : back.data()) max_im = std::max(max_im, std::abs(z.imag()));
    EXPECT_LE(max_im, 1e-12 * sup_norm(f));
  }
}

TEST(Transform, RepresentationMismatchThrows) {
  const auto g = make_grid(8, 8, 1, 1);
  const Field p(g, Representation::physical);
  const Field s(g, Representation::spectral);
  EXPECT_THROW(to_physical(p), std::invalid_argument);
  EXPECT_THROW(to_spectral(s), std::invalid_argument);
}

TEST(Plancherel, HundredRandomFields) {
  const auto g = make_grid(32, 32, 9.0, 6.0);
  for (unsigned seed = 0; seed < 100; ++seed) {
    const Field f = white_noise(g, 1000 + seed);
    const double physical = l2_norm(f);
    const double spectral = l2_norm(to_spectral(f));
    EXPECT_NEAR(spectral / physical, 1.0, 1e-12);
    EXPECT_NEAR(sobolev_norm(f, 0.0, false) / physical, 1.0, 1e-12);
    EXPECT_NEAR(sobolev_norm(f, 0.0, true) / physical, 1.0, 1e-12);
  }
}

TEST(FractionalDerivative, Examples) {
  const auto g = make_grid(32, 32, 2 * pi, 2 * pi);
  const Field c1 = Field::from_function(g, [](double x, double) { return std::cos(x); });
  const Field c2 = Field::from_function(g, [](double x, double) { return std::cos(2 * x); });
  EXPECT_LT(max_abs_difference(fractional_derivative(c1, 1.0, Axis::x), c1), 1e-13);
  EXPECT_LT(max_abs_difference(fractional_derivative(c2, 2.0, Axis::x), 4.0 * c2), 1e-12);
  const Field f = mean_free(white_noise(g, 3));
  EXPECT_LT(max_abs_difference(fractional_derivative(f, 0.0, Axis::x), f), 1e-12);
  EXPECT_THROW(fractional_derivative(f, -1.5, Axis::x), std::invalid_argument);
}

TEST(FractionalDerivative, NegativePowerAnnihilatesZeroWavenumber) {
  const auto g = make_grid(16, 16, 2 * pi, 2 * pi);
  const Field f = Field::from_function(g, [](double x, double y) { return 1.0 + std::cos(y) + std::cos(2 * x); });
  const Field d = fractional_derivative(to_spectral(f), -0.5, Axis::x);
  for (std::size_t jy = 0; jy < g.ny(); ++jy) EXPECT_EQ(std::abs(d.at(0, jy)), 0.0);
  EXPECT_NEAR(d.at(g.column_of(2), 0).real(), std::pow(2.0, -0.5) * 0.5 * g.area(), 1e-10);
}

TEST(FractionalDerivative, CompositionProperty) {
  const auto g = make_grid(32, 32, 5.0, 5.0);
  for (unsigned seed = 0; seed < 5; ++seed) {
    const Field f = mean_free(white_noise(g, seed));
    for (double a : {0.25, 0.5, 1.0}) {
      for (double b : {0.25, 0.5, 1.0}) {
        for (Axis axis : {Axis::x, Axis::y}) {
          const Field lhs = fractional_derivative(fractional_derivative(f, b, axis), a, axis);
          const Field rhs = fractional_derivative(f, a + b, axis);
          EXPECT_LE(l2_norm(lhs - rhs), 1e-12 * l2_norm(rhs));
        }
      }
    }
  }
}

TEST(FractionalDerivative, RealSymbolPreservesHermitianSymmetry) {
  const auto g = make_grid(32, 32, 5.0, 5.0);
  const Field f = white_noise(g, 11);
  const Field spectral_result = fractional_derivative(to_spectral(f), 0.7, Axis::y);
  EXPECT_LT(hermitian_defect(spectral_result), 1e-13);
  EXPECT_LT(hermitian_defect(derivative(to_spectral(f), Axis::x)), 1e-13);
  EXPECT_LT(hermitian_defect(to_spectral(laplacian(f))), 1e-12);
}

TEST(Sobolev, CosineHasUnitGradientRatio) {
  const auto g = make_grid(32, 32, 2 * pi, 2 * pi);
  const Field c = Field::from_function(g, [](double x, double) { return std::cos(x); });
  EXPECT_NEAR(sobolev_norm(c, 1.0, true), l2_norm(c), 1e-12);
  EXPECT_NEAR(sobolev_norm(c, 1.0, false), std::sqrt(2.0) * l2_norm(c), 1e-12);
  EXPECT_NEAR(sobolev_inner(c, c, 0.5, true), std::pow(l2_norm(c), 2), 1e-11);
}

TEST(MixedNorm, ConstantIntegrand) {
  const auto g = make_grid(16, 16, 3.0, 2.0);
  const Field one = Field::from_function(g, [](double, double) { return 1.0; });
  SpaceTimeTrace trace{g, 0.1, {}};
  for (int n = 0; n < 10; ++n) trace.push(one);
  EXPECT_NEAR(mixed_norm(trace, 2, 2, 2, MixedOrder::x_y_t), std::sqrt(3.0 * 2.0 * 1.0), 1e-12);
}

TEST(MixedNorm, InfinityIsSampleMax) {
  const auto g = make_grid(16, 16, 3.0, 2.0);
  SpaceTimeTrace trace{g, 0.05, {}};
  double expected = 0.0;
  for (unsigned n = 0; n < 7; ++n) {
    const Field f = white_noise(g, 50 + n);
    expected = std::max(expected, sup_norm(f));
    trace.push(f);
  }
  for (auto order : {MixedOrder::x_y_t, MixedOrder::t_xy, MixedOrder::x_yt}) {
    EXPECT_DOUBLE_EQ(mixed_norm(trace, infinity, infinity, infinity, order), expected);
  }
}

TEST(MixedNorm, L2MatchesFlatSumInEveryOrder) {
  const auto g = make_grid(16, 24, 3.0, 2.0);
  SpaceTimeTrace trace{g, 0.03, {}};
  double flat = 0.0;
  for (unsigned n = 0; n < 9; ++n) {
    const Field f = white_noise(g, 80 + n);
    for (const auto& z : f.data()) flat += z.real() * z.real();
    trace.push(f);
  }
  flat = std::sqrt(flat * g.cell_area() * trace.dt);
  for (auto order : {MixedOrder::x_y_t, MixedOrder::t_xy, MixedOrder::x_yt}) {
    EXPECT_NEAR(mixed_norm(trace, 2, 2, 2, order) / flat, 1.0, 1e-12);
  }
}

TEST(MixedNorm, RejectsEmptyTraceAndBadExponents) {
  const auto g = make_grid(8, 8, 1, 1);
  SpaceTimeTrace empty{g, 0.1, {}};
  EXPECT_THROW(mixed_norm(empty, 2, 2, 2, MixedOrder::x_y_t), std::invalid_argument);
  EXPECT_THROW(make_trace({}, 0.1), std::invalid_argument);
  SpaceTimeTrace one{g, 0.1, {}};
  one.push(Field(g, Representation::physical));
  EXPECT_THROW(mixed_norm(one, 0.5, 2, 2, MixedOrder::x_y_t), std::invalid_argument);
}

TEST(Split, OrthogonalPiecesPreserveNorm) {
  const auto g = make_grid(64, 64, 2 * pi, 2 * pi);
  for (unsigned seed = 0; seed < 10; ++seed) {
    const Field f = white_noise(g, 200 + seed);
    for (auto set : {CutoffSet::full_frequency, CutoffSet::x_frequency}) {
      const auto split = low_high_split(f, 5.5, set);
      const double lhs = std::pow(l2_norm(split.low), 2) + std::pow(l2_norm(split.high), 2);
      EXPECT_NEAR(lhs / std::pow(l2_norm(f), 2), 1.0, 1e-12);
      EXPECT_LT(l2_norm(split.low + split.high - f), 1e-12 * l2_norm(f));
    }
  }
}

TEST(Split, CutoffBeyondNyquistLeavesNoHighPart) {
  const auto g = make_grid(32, 32, 2 * pi, 2 * pi);
  const Field f = white_noise(g, 5);
  const auto split = low_high_split(f, 1000.0);
  EXPECT_EQ(l2_norm(split.high), 0.0);
  EXPECT_THROW(low_high_split(f, 0.0), std::invalid_argument);
}

TEST(Split, IsAProjection) {
  const auto g = make_grid(32, 32, 4.0, 4.0);
  const Field f = to_spectral(white_noise(g, 9));
  for (auto set : {CutoffSet::full_frequency, CutoffSet::x_frequency}) {
    const auto first = low_high_split(f, 7.0, set);
    const auto second = low_high_split(first.low, 7.0, set);
    EXPECT_EQ(l2_norm(second.high), 0.0);
    EXPECT_EQ(l2_norm(second.low - first.low), 0.0);
  }
}

TEST(Split, XFrequencyCutoffIgnoresEta) {
  const auto g = make_grid(32, 32, 2 * pi, 2 * pi);
  const Field f = Field::from_function(g, [](double x, double y) { return std::cos(x) * std::cos(9 * y); });
  EXPECT_NEAR(l2_norm(low_high_split(f, 2.0, CutoffSet::x_frequency).high), 0.0, 1e-12);
  EXPECT_NEAR(l2_norm(low_high_split(f, 2.0, CutoffSet::full_frequency).low), 0.0, 1e-12);
}

// ||w0||_{L2} ~ N^{-s} for u0_hat = (1 + |k|^2)^{-(s+1)/2}: regression oracle.
TEST(Split, HighPartDecaysAtPrescribedRate) {
  const double s = 0.85;
  const auto g = make_grid(256, 256, 2 * pi, 2 * pi);
  const Field u0 = prescribed_regularity_datum(g, s, 1.0, 17);
  std::vector<double> lx, ly;
  for (double n : {4.0, 8.0, 16.0, 32.0}) {
    lx.push_back(std::log(n));
    ly.push_back(std::log(l2_norm(low_high_split(u0, n).high)));
  }
  const double mx = (lx[0] + lx[1] + lx[2] + lx[3]) / 4, my = (ly[0] + ly[1] + ly[2] + ly[3]) / 4;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 4; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  EXPECT_NEAR(sxy / sxx, -s, 0.1);
}

TEST(RandomField, BandLimitedEnsembleIsGridIndependent) {
  const auto coarse = make_grid(32, 32, 8 * pi, 8 * pi);
  const auto fine = make_grid(64, 64, 8 * pi, 8 * pi);
  const Field a = band_limited_random_field(coarse, 42, 8);
  const Field b = band_limited_random_field(fine, 42, 8);
  EXPECT_NEAR(l2_norm(a) / l2_norm(b), 1.0, 1e-12);
  EXPECT_NEAR(sobolev_norm(a, 1.0, false) / sobolev_norm(b, 1.0, false), 1.0, 1e-12);
  EXPECT_GT(l2_norm(a), 0.0);
  EXPECT_LT(hermitian_defect(to_spectral(a)), 1e-12);
}

TEST(Snapshot, RoundTripAndRejection) {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string path = (dir / "gzk_snapshot_test.gzk").string();
  const auto g = make_grid(16, 8, 2.5, 1.5);
  const Field f = to_spectral(white_noise(g, 1));
  write_snapshot(path, f, 0.75);
  const auto snap = read_snapshot(path);
  EXPECT_EQ(snap.time, 0.75);
  EXPECT_TRUE(snap.field.grid() == g);
  EXPECT_TRUE(snap.field.is_spectral());
  EXPECT_EQ(max_abs_difference(snap.field, f), 0.0);
  EXPECT_EQ(std::filesystem::file_size(path), 40 + 16 * g.size());

  {
    std::fstream io(path, std::ios::in | std::ios::out | std::ios::binary);
    io.seekp(0);
    io.write("XZK1", 4);
  }
  EXPECT_THROW(read_snapshot(path), SnapshotError);

  write_snapshot(path, f, 0.0);
  {
    std::fstream io(path, std::ios::in | std::ios::out | std::ios::binary);
    io.seekp(4);
    const std::uint32_t huge = 1u << 30;
    io.write(reinterpret_cast<const char*>(&huge), 4);
  }
  EXPECT_THROW(read_snapshot(path), SnapshotError);

  write_snapshot(path, f, 0.0);
  std::filesystem::resize_file(path, 100);
  EXPECT_THROW(read_snapshot(path), SnapshotError);
  EXPECT_THROW(read_snapshot((dir / "does_not_exist.gzk").string()), SnapshotError);
  std::filesystem::remove(path);
}

}  // namespace
