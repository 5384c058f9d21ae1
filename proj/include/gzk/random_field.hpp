#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "gzk/field.hpp"
#include "gzk/norms.hpp"

namespace gzk {

/// Band-limited Gaussian random field with spectral decay (1 + |k|^2)^-1.
///
/// Coefficients are drawn for the signed lattice modes |mx|, |my| <= band in a
/// fixed order, so the same seed yields the same function on every grid of
/// the same box whose resolution contains the band.
inline Field band_limited_random_field(const GridSpec& grid, std::uint64_t seed, long band) {
  if (band < 1 || 2 * band >= static_cast<long>(std::min(grid.nx(), grid.ny()))) {
    throw std::invalid_argument("random field: band must be >= 1 and below the Nyquist index");
  }
  const long width = 2 * band + 1;
  std::vector<cplx> draws(static_cast<std::size_t>(width * width));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto& z : draws) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = cplx{re, im};
  }
  auto draw = [&](long mx, long my) {
    return draws[static_cast<std::size_t>((my + band) * width + (mx + band))];
  };

  const double two_pi = 2.0 * std::numbers::pi;
  Field out(grid, Representation::spectral);
  for (long my = -band; my <= band; ++my) {
    for (long mx = -band; mx <= band; ++mx) {
      const double kx = two_pi * static_cast<double>(mx) / grid.lx();
      const double ky = two_pi * static_cast<double>(my) / grid.ly();
      const double decay = 1.0 / (1.0 + kx * kx + ky * ky);
      const cplx c = 0.5 * (draw(mx, my) + std::conj(draw(-mx, -my)));
      out.at(grid.column_of(mx), grid.row_of(my)) = decay * grid.area() * c;
    }
  }
  return real_part(to_physical(out));
}

/// Datum with prescribed Sobolev regularity:
///   u0_hat = A (1 + |k|^2)^(-(s+1)/2) e^{i theta_k},
/// Hermitian random phases, optionally restricted to |k| < radius, and A
/// chosen so that ||u0||_{L2} equals `l2_target`.
inline Field prescribed_regularity_datum(const GridSpec& grid, double s, double l2_target,
                                         std::uint64_t seed,
                                         double radius = std::numeric_limits<double>::infinity()) {
  if (!(l2_target > 0.0)) throw std::invalid_argument("prescribed datum: L2 target must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
  Field out(grid, Representation::spectral);
  const std::size_t nx = grid.nx(), ny = grid.ny();
  for (std::size_t jy = 0; jy < ny; ++jy) {
    for (std::size_t jx = 0; jx < nx; ++jx) {
      const double phase = phase_dist(rng);
      const std::size_t px = (nx - jx) % nx;
      const std::size_t py = (ny - jy) % ny;
      const std::size_t self = grid.index(jx, jy);
      const std::size_t partner = grid.index(px, py);
      if (partner < self) continue;
      const double k2 = wavenumber_squared(grid, jx, jy);
      if (std::sqrt(k2) >= radius) continue;
      const double amp = std::pow(1.0 + k2, -0.5 * (s + 1.0));
      if (partner == self) {
        out[self] = cplx{amp * std::cos(phase), 0.0};
      } else {
        out[self] = std::polar(amp, phase);
        out[partner] = std::conj(out[self]);
      }
    }
  }
  const double norm = l2_norm(out);
  if (!(norm > 0.0)) throw std::invalid_argument("prescribed datum: empty spectrum");
  out *= l2_target / norm;
  return real_part(to_physical(out));
}

}  // namespace gzk
