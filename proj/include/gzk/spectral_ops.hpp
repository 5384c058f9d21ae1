#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "gzk/field.hpp"

namespace gzk {

/// Spectral partial derivative d/dx or d/dy (odd symbol, zero at Nyquist).
inline Field derivative(const Field& f, Axis axis) {
  const auto& g = f.grid();
  if (axis == Axis::x) {
    return filter(f, [&](std::size_t jx, std::size_t) { return cplx{0.0, g.xi_odd(jx)}; });
  }
  return filter(f, [&](std::size_t, std::size_t jy) { return cplx{0.0, g.eta_odd(jy)}; });
}

/// D^alpha along one axis: multiplier |xi|^alpha (or |eta|^alpha). For
/// alpha < 0 every mode with vanishing wavenumber on that axis is set to 0.
inline Field fractional_derivative(const Field& f, double alpha, Axis axis) {
  if (!(alpha >= -1.0)) throw std::invalid_argument("fractional_derivative: alpha must be >= -1");
  const auto& g = f.grid();
  auto symbol = [alpha](double k) -> double {
    if (alpha == 0.0) return 1.0;
    const double a = std::abs(k);
    if (a == 0.0) return 0.0;
    return std::pow(a, alpha);
  };
  if (axis == Axis::x) {
    return filter(f, [&](std::size_t jx, std::size_t) { return symbol(g.xi(jx)); });
  }
  return filter(f, [&](std::size_t, std::size_t jy) { return symbol(g.eta(jy)); });
}

inline Field laplacian(const Field& f) {
  const auto& g = f.grid();
  return filter(f, [&](std::size_t jx, std::size_t jy) {
    return -(g.xi(jx) * g.xi(jx) + g.eta(jy) * g.eta(jy));
  });
}

/// |(xi, eta)|^2 at storage position (jx, jy).
inline double wavenumber_squared(const GridSpec& g, std::size_t jx, std::size_t jy) {
  return g.xi(jx) * g.xi(jx) + g.eta(jy) * g.eta(jy);
}

/// 2/3-rule mask: keeps modes with |jx| <= nx/3 and |jy| <= ny/3.
inline bool dealias_keep(const GridSpec& g, std::size_t jx, std::size_t jy) {
  const long mx = std::labs(g.mode_x(jx));
  const long my = std::labs(g.mode_y(jy));
  return 3 * mx <= static_cast<long>(g.nx()) && 3 * my <= static_cast<long>(g.ny());
}

inline Field dealias(const Field& f) {
  const auto& g = f.grid();
  return filter(f, [&](std::size_t jx, std::size_t jy) { return dealias_keep(g, jx, jy) ? 1.0 : 0.0; });
}

/// f(x - ax, y - ay) by spectral phase shift.
inline Field translate(const Field& f, double ax, double ay) {
  const auto& g = f.grid();
  return filter(f, [&](std::size_t jx, std::size_t jy) {
    const double phase = -(g.xi_odd(jx) * ax + g.eta_odd(jy) * ay);
    return std::polar(1.0, phase);
  });
}

/// Fraction of the spectral energy carried by modes outside the 2/3-rule
/// band; the validity sentinel for power nonlinearities.
inline double spectral_tail_fraction(const Field& f) {
  const Field s = as_spectral(f);
  const auto& g = s.grid();
  double total = 0.0;
  double tail = 0.0;
  for (std::size_t jy = 0; jy < g.ny(); ++jy) {
    for (std::size_t jx = 0; jx < g.nx(); ++jx) {
      const double e = std::norm(s.at(jx, jy));
      total += e;
      if (!dealias_keep(g, jx, jy)) tail += e;
    }
  }
  return total > 0.0 ? tail / total : 0.0;
}

}  // namespace gzk
