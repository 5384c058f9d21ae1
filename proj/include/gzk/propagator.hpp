#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "gzk/field.hpp"

namespace gzk {

/// omega(xi, eta) = xi^3 + xi*eta^2 tabulated on a grid's lattice.
///
/// The linear flow u_t + d_x Laplacian(u) = 0 becomes u_hat_t = i omega u_hat, so
/// U(t) multiplies the spectrum by exp(i t omega). The x-Nyquist column has no
/// conjugate partner and carries omega = 0.
class DispersionSymbol {
 public:
  explicit DispersionSymbol(const GridSpec& grid) : grid_(grid), omega_(grid.size()) {
    for (std::size_t jy = 0; jy < grid.ny(); ++jy) {
      const double eta = grid.eta(jy);
      for (std::size_t jx = 0; jx < grid.nx(); ++jx) {
        omega_[grid.index(jx, jy)] = evaluate(grid.xi_odd(jx), eta);
      }
    }
  }

  static double evaluate(double xi, double eta) { return xi * xi * xi + xi * eta * eta; }

  const GridSpec& grid() const { return grid_; }
  double operator[](std::size_t i) const { return omega_[i]; }
  double at(std::size_t jx, std::size_t jy) const { return omega_[grid_.index(jx, jy)]; }
  const std::vector<double>& values() const { return omega_; }

 private:
  GridSpec grid_;
  std::vector<double> omega_;
};

/// U(t)f for any real t; returns the input's representation.
inline Field apply_group(const Field& f, double t, const DispersionSymbol& symbol) {
  if (!(f.grid() == symbol.grid())) throw std::invalid_argument("apply_group: grid mismatch");
  Field out = as_spectral(f);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= std::polar(1.0, t * symbol[i]);
  return f.is_physical() ? real_part(to_physical(out)) : out;
}

inline Field apply_group(const Field& f, double t) { return apply_group(f, t, DispersionSymbol(f.grid())); }

enum class Quadrature { trapezoid, simpson };

/// z(t_end) = int_0^{t_end} U(t_end - s) F(s) ds from uniformly spaced samples
/// F(t_0 = 0), ..., F(t_end). Simpson on an even number of intervals; with an
/// odd count the last three intervals use the 3/8 rule.
inline Field duhamel(const std::vector<Field>& force, double dt, Quadrature rule) {
  if (force.size() < 3) throw std::invalid_argument("duhamel: need at least 3 time samples");
  if (!(dt > 0.0)) throw std::invalid_argument("duhamel: time step must be positive");
  const GridSpec grid = force.front().grid();
  const DispersionSymbol symbol(grid);
  const std::size_t intervals = force.size() - 1;
  const double t_end = dt * static_cast<double>(intervals);

  std::vector<double> weights(force.size(), 0.0);
  if (rule == Quadrature::trapezoid) {
    for (std::size_t n = 0; n <= intervals; ++n) weights[n] = (n == 0 || n == intervals) ? 0.5 : 1.0;
  } else {
    std::size_t simpson_end = intervals;
    if (intervals % 2 == 1) {
      simpson_end = intervals - 3;
      weights[simpson_end] += 3.0 / 8.0;
      weights[simpson_end + 1] += 9.0 / 8.0;
      weights[simpson_end + 2] += 9.0 / 8.0;
      weights[simpson_end + 3] += 3.0 / 8.0;
    }
    for (std::size_t n = 0; n + 2 <= simpson_end; n += 2) {
      weights[n] += 1.0 / 3.0;
      weights[n + 1] += 4.0 / 3.0;
      weights[n + 2] += 1.0 / 3.0;
    }
  }

  Field acc(grid, Representation::spectral);
  for (std::size_t n = 0; n <= intervals; ++n) {
    if (!(force[n].grid() == grid)) throw std::invalid_argument("duhamel: grid mismatch");
    if (weights[n] == 0.0) continue;
    const Field fn = as_spectral(force[n]);
    const double lag = t_end - dt * static_cast<double>(n);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      acc[i] += weights[n] * dt * std::polar(1.0, lag * symbol[i]) * fn[i];
    }
  }
  return force.front().is_physical() ? real_part(to_physical(acc)) : acc;
}

}  // namespace gzk
