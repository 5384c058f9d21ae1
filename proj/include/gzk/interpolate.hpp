#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gzk/field.hpp"

namespace gzk {

namespace detail {

// Row t holds the periodic sinc weights that map n samples on [-L/2, L/2)
// to the trigonometric interpolant at points[t]. The Nyquist term enters as
// a cosine so real data stay real. Points outside the box get a zero row.
inline std::vector<double> interpolation_matrix(std::size_t n, double length, const std::vector<double>& points) {
  const double h = length / static_cast<double>(n);
  const std::size_t half = n / 2;
  std::vector<double> k(points.size() * n, 0.0);
  for (std::size_t t = 0; t < points.size(); ++t) {
    const double p = points[t];
    if (p < -0.5 * length || p >= 0.5 * length) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = p - (-0.5 * length + static_cast<double>(i) * h);
      const double theta = 2.0 * std::numbers::pi * d / length;
      const double c1 = std::cos(theta);
      double prev = 1.0, cur = c1, sum = 1.0;
      for (std::size_t m = 1; m < half; ++m) {
        sum += 2.0 * cur;
        const double next = 2.0 * c1 * cur - prev;
        prev = cur;
        cur = next;
      }
      sum += std::cos(static_cast<double>(half) * theta);
      k[t * n + i] = sum / static_cast<double>(n);
    }
  }
  return k;
}

}  // namespace detail

/// Samples the trigonometric interpolant of f at (stretch * x, stretch * y)
/// for every node (x, y) of `target`. Points that fall outside the source box
/// are set to zero instead of being wrapped periodically.
inline Field resample(const Field& f, const GridSpec& target, double stretch = 1.0) {
  if (!(stretch > 0.0)) throw std::invalid_argument("resample: stretch must be positive");
  const Field src = as_physical(f);
  const auto& g = src.grid();
  std::vector<double> px(target.nx()), py(target.ny());
  for (std::size_t t = 0; t < target.nx(); ++t) px[t] = stretch * target.x(t);
  for (std::size_t s = 0; s < target.ny(); ++s) py[s] = stretch * target.y(s);
  const auto kx = detail::interpolation_matrix(g.nx(), g.lx(), px);
  const auto ky = detail::interpolation_matrix(g.ny(), g.ly(), py);

  const std::size_t nx = g.nx(), ny = g.ny(), tx = target.nx(), ty = target.ny();
  std::vector<double> tmp(ny * tx, 0.0);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t t = 0; t < tx; ++t) {
      double acc = 0.0;
      for (std::size_t i = 0; i < nx; ++i) acc += src.at(i, iy).real() * kx[t * nx + i];
      tmp[iy * tx + t] = acc;
    }
  }
  std::vector<double> out(ty * tx, 0.0);
  for (std::size_t s = 0; s < ty; ++s) {
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const double w = ky[s * ny + iy];
      if (w == 0.0) continue;
      for (std::size_t t = 0; t < tx; ++t) out[s * tx + t] += w * tmp[iy * tx + t];
    }
  }
  return Field::from_real(target, out);
}

}  // namespace gzk
