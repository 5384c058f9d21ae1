#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gzk/field.hpp"
#include "gzk/norms.hpp"
#include "gzk/propagator.hpp"
#include "gzk/random_field.hpp"
#include "gzk/spectral_ops.hpp"

namespace {

using namespace gzk;
constexpr double pi = std::numbers::pi;

Field smooth_random(const GridSpec& g, unsigned seed) { return band_limited_random_field(g, seed, 6); }

TEST(Group, Unitary) {
  const auto g = make_grid(64, 64, 2 * pi, 2 * pi);
  for (unsigned seed = 0; seed < 10; ++seed) {
    const Field f = smooth_random(g, seed);
    for (double t : {0.0, 0.1, -0.7, 3.0}) {
      EXPECT_NEAR(l2_norm(apply_group(f, t)) / l2_norm(f), 1.0, 1e-12);
    }
  }
}

TEST(Group, GroupLaw) {
  const auto g = make_grid(48, 32, 5.0, 4.0);
  const DispersionSymbol symbol(g);
  for (unsigned seed = 0; seed < 5; ++seed) {
    const Field f = smooth_random(g, 20 + seed);
    const Field a = apply_group(apply_group(f, 0.3, symbol), -1.1, symbol);
    const Field b = apply_group(f, -0.8, symbol);
    EXPECT_LT(l2_norm(a - b), 1e-12 * l2_norm(f));
    EXPECT_LT(l2_norm(apply_group(f, 0.0, symbol) - f), 1e-13 * l2_norm(f));
  }
}

TEST(Group, SingleModePhase) {
  const auto g = make_grid(32, 32, 2 * pi, 2 * pi);
  const double t = 0.37;
  const Field f = Field::from_function(g, [](double x, double y) { return std::cos(2 * x + 3 * y); });
  // omega(2, 3) = 8 + 18, so U(t) cos(2x + 3y) = cos(2x + 3y + 26 t)
  const Field expected = Field::from_function(g, [&](double x, double y) { return std::cos(2 * x + 3 * y + 26 * t); });
  const Field got = apply_group(f, t);
  EXPECT_LT(sup_norm(got - expected), 1e-12);
  EXPECT_DOUBLE_EQ(DispersionSymbol::evaluate(2, 3), 26.0);
}

TEST(Group, SolvesLinearEquation) {
  const auto g = make_grid(32, 32, 2 * pi, 2 * pi);
  const Field f = smooth_random(g, 3);
  const double t = 0.4, h = 1e-5;
  const Field dudt = (1.0 / (2 * h)) * (apply_group(f, t + h) - apply_group(f, t - h));
  const Field u = apply_group(f, t);
  const Field rhs = -1.0 * derivative(laplacian(u), Axis::x);
  EXPECT_LT(l2_norm(as_physical(dudt) - as_physical(rhs)) / l2_norm(rhs), 1e-5);
}

TEST(Group, PreservesRealityAndCommutesWithDerivatives) {
  const auto g = make_grid(64, 32, 6.0, 3.0);
  const Field f = Field::from_real(g, [&] {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    std::vector<double> v(g.size());
    for (auto& x : v) x = normal(rng);
    return v;
  }());
  const Field spectral = apply_group(to_spectral(f), 1.3);
  EXPECT_LT(hermitian_defect(spectral), 1e-13);
  for (Axis axis : {Axis::x, Axis::y}) {
    const Field a = apply_group(derivative(f, axis), 0.9);
    const Field b = derivative(apply_group(f, 0.9), axis);
    EXPECT_LT(l2_norm(a - b), 1e-12 * l2_norm(a));
  }
}

TEST(Duhamel, ZeroForcingGivesZero) {
  const auto g = make_grid(16, 16, 2 * pi, 2 * pi);
  std::vector<Field> force(5, Field(g, Representation::physical));
  EXPECT_EQ(l2_norm(duhamel(force, 0.1, Quadrature::trapezoid)), 0.0);
  EXPECT_EQ(l2_norm(duhamel(force, 0.1, Quadrature::simpson)), 0.0);
}

TEST(Duhamel, RejectsShortSequences) {
  const auto g = make_grid(16, 16, 2 * pi, 2 * pi);
  std::vector<Field> force(2, Field(g, Representation::physical));
  EXPECT_THROW(duhamel(force, 0.1, Quadrature::trapezoid), std::invalid_argument);
  force.resize(3, Field(g, Representation::physical));
  EXPECT_THROW(duhamel(force, 0.0, Quadrature::trapezoid), std::invalid_argument);
}

// F(t) = cos(t) cos(x + y): each Fourier mode gives a closed-form time integral.
cplx mode_integral(double omega, double T) {
  const cplx i{0.0, 1.0};
  const cplx a = (std::exp(i * (1.0 - omega) * T) - 1.0) / (i * (1.0 - omega));
  const cplx b = (std::exp(-i * (1.0 + omega) * T) - 1.0) / (-i * (1.0 + omega));
  return std::exp(i * omega * T) * 0.5 * (a + b);
}

std::vector<Field> manufactured_force(const GridSpec& g, double T, std::size_t intervals) {
  const Field shape = Field::from_function(g, [](double x, double y) { return std::cos(x + y); });
  std::vector<Field> force;
  for (std::size_t n = 0; n <= intervals; ++n) {
    force.push_back(std::cos(T * static_cast<double>(n) / static_cast<double>(intervals)) * shape);
  }
  return force;
}

Field manufactured_exact(const GridSpec& g, double T) {
  Field out(g, Representation::spectral);
  const double omega = DispersionSymbol::evaluate(1, 1);
  const cplx plus = mode_integral(omega, T) * 0.5 * g.area();
  const cplx minus = mode_integral(-omega, T) * 0.5 * g.area();
  out.at(g.column_of(1), g.row_of(1)) = plus;
  out.at(g.column_of(-1), g.row_of(-1)) = minus;
  return real_part(to_physical(out));
}

TEST(Duhamel, ManufacturedOracleAndConvergenceOrder) {
  const auto g = make_grid(16, 16, 2 * pi, 2 * pi);
  const double T = 1.5;
  const Field exact = manufactured_exact(g, T);
  double prev_trap = 0.0, prev_simp = 0.0;
  for (std::size_t intervals : {40u, 80u, 160u}) {
    const auto force = manufactured_force(g, T, intervals);
    const double dt = T / static_cast<double>(intervals);
    const double e_trap = l2_norm(duhamel(force, dt, Quadrature::trapezoid) - exact);
    const double e_simp = l2_norm(duhamel(force, dt, Quadrature::simpson) - exact);
    if (prev_trap > 0.0) {
      EXPECT_NEAR(prev_trap / e_trap, 4.0, 0.1);
      EXPECT_NEAR(prev_simp / e_simp, 16.0, 0.8);
    }
    prev_trap = e_trap;
    prev_simp = e_simp;
  }
  EXPECT_LT(prev_simp, 1e-7 * l2_norm(exact));
}

TEST(Duhamel, SimpsonHandlesOddIntervalCount) {
  const auto g = make_grid(16, 16, 2 * pi, 2 * pi);
  const double T = 1.5;
  const Field exact = manufactured_exact(g, T);
  const auto force = manufactured_force(g, T, 81);
  EXPECT_LT(l2_norm(duhamel(force, T / 81, Quadrature::simpson) - exact), 1e-6 * l2_norm(exact));
}

TEST(Duhamel, Linear) {
  const auto g = make_grid(32, 32, 2 * pi, 2 * pi);
  std::vector<Field> f1, f2, combo;
  for (unsigned n = 0; n < 7; ++n) {
    f1.push_back(smooth_random(g, 100 + n));
    f2.push_back(smooth_random(g, 200 + n));
    combo.push_back(2.0 * f1.back() - 0.5 * f2.back());
  }
  for (auto rule : {Quadrature::trapezoid, Quadrature::simpson}) {
    const Field lhs = duhamel(combo, 0.05, rule);
    const Field rhs = 2.0 * duhamel(f1, 0.05, rule) - 0.5 * duhamel(f2, 0.05, rule);
    EXPECT_LT(l2_norm(lhs - rhs), 1e-12 * l2_norm(rhs));
  }
}

}  // namespace
