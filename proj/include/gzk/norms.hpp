#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gzk/field.hpp"
#include "gzk/spectral_ops.hpp"

namespace gzk {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

/// Rectangle-rule integral of a physical field.
inline double integral(const Field& f) {
  f.require(Representation::physical, "integral");
  double sum = 0.0;
  for (const auto& z : f.data()) sum += z.real();
  return sum * f.grid().cell_area();
}

/// L^p norm by rectangle-rule quadrature; p = infinity gives the sample max.
inline double lp_norm(const Field& f, double p) {
  const Field u = as_physical(f);
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& z : u.data()) m = std::max(m, std::abs(z));
    return m;
  }
  double sum = 0.0;
  for (const auto& z : u.data()) sum += std::pow(std::abs(z), p);
  return std::pow(sum * u.grid().cell_area(), 1.0 / p);
}

inline double sup_norm(const Field& f) { return lp_norm(f, infinity); }

/// L2 norm, evaluated in whichever representation the field is held.
inline double l2_norm(const Field& f) {
  double sum = 0.0;
  for (const auto& z : f.data()) sum += std::norm(z);
  const auto& g = f.grid();
  return std::sqrt(f.is_physical() ? sum * g.cell_area() : sum / g.area());
}

/// Sobolev weight: |k|^(2s) (homogeneous) or (1 + |k|^2)^s. The homogeneous
/// weight drops the zero mode except at s = 0, where both weights are 1.
inline double sobolev_weight(double k2, double s, bool homogeneous) {
  if (s == 0.0) return 1.0;
  if (homogeneous) return k2 == 0.0 ? 0.0 : std::pow(k2, s);
  return std::pow(1.0 + k2, s);
}

/// Real Sobolev inner product <f, g>_{H^s} via Plancherel.
inline double sobolev_inner(const Field& f, const Field& h, double s, bool homogeneous) {
  const Field a = as_spectral(f);
  const Field b = as_spectral(h);
  a.check_compatible(b);
  const auto& g = a.grid();
  double sum = 0.0;
  for (std::size_t jy = 0; jy < g.ny(); ++jy) {
    for (std::size_t jx = 0; jx < g.nx(); ++jx) {
      const double w = sobolev_weight(wavenumber_squared(g, jx, jy), s, homogeneous);
      if (w == 0.0) continue;
      sum += w * (a.at(jx, jy) * std::conj(b.at(jx, jy))).real();
    }
  }
  return sum / g.area();
}

/// ||f||_{H^s} or ||f||_{\dot H^s}; at s = 0 both equal the L2 norm.
inline double sobolev_norm(const Field& f, double s, bool homogeneous) {
  const Field a = as_spectral(f);
  const auto& g = a.grid();
  double sum = 0.0;
  for (std::size_t jy = 0; jy < g.ny(); ++jy) {
    for (std::size_t jx = 0; jx < g.nx(); ++jx) {
      const double w = sobolev_weight(wavenumber_squared(g, jx, jy), s, homogeneous);
      if (w != 0.0) sum += w * std::norm(a.at(jx, jy));
    }
  }
  return std::sqrt(sum / g.area());
}

/// ||grad f||_{L2}.
inline double gradient_norm(const Field& f) { return sobolev_norm(f, 1.0, true); }

// ---------------------------------------------------------------------------
// Mixed space-time norms

/// Uniformly sampled space-time field: frame n holds the physical samples at
/// time n * dt. The time quadrature is the rectangle rule, so a trace of M
/// frames spans an interval of length M * dt.
struct SpaceTimeTrace {
  GridSpec grid;
  double dt = 0.0;
  std::vector<std::vector<double>> frames;

  std::size_t steps() const { return frames.size(); }
  double duration() const { return dt * static_cast<double>(frames.size()); }

  void push(const Field& f) {
    const Field u = as_physical(f);
    if (frames.empty() && grid.size() == 0) grid = u.grid();
    if (!(u.grid() == grid)) throw std::invalid_argument("trace: grid mismatch");
    frames.push_back(u.real_values());
  }
};

inline SpaceTimeTrace make_trace(const std::vector<Field>& frames, double dt) {
  if (frames.empty()) throw std::invalid_argument("trace: empty frame sequence");
  SpaceTimeTrace trace{frames.front().grid(), dt, {}};
  for (const auto& f : frames) trace.push(f);
  return trace;
}

/// Nesting of a mixed norm, listed outermost first.
///   x_y_t : L^p_x L^q_y L^r_T
///   t_xy  : L^p_T L^q_{xy}       (r unused)
///   x_yt  : L^p_x L^q_{yT}       (r unused)
enum class MixedOrder { x_y_t, t_xy, x_yt };

namespace detail {

inline double accumulate_power(double acc, double value, double p, double weight) {
  if (std::isinf(p)) return std::max(acc, std::abs(value));
  if (p == 2.0) return acc + value * value * weight;
  return acc + std::pow(std::abs(value), p) * weight;
}

inline double finish_power(double acc, double p) { return std::isinf(p) ? acc : std::pow(acc, 1.0 / p); }

}  // namespace detail

/// Nested rectangle-rule mixed norm; infinite exponents become sample maxima.
inline double mixed_norm(const SpaceTimeTrace& trace, double p, double q, double r, MixedOrder order) {
  if (trace.frames.empty()) throw std::invalid_argument("mixed_norm: empty trace");
  for (double e : {p, q, r}) {
    if (!(e >= 1.0)) throw std::invalid_argument("mixed_norm: exponents must lie in [1, inf]");
  }
  const auto& g = trace.grid;
  const std::size_t nx = g.nx(), ny = g.ny(), nt = trace.frames.size();
  const double wx = g.dx(), wy = g.dy(), wt = trace.dt;
  auto value = [&](std::size_t ix, std::size_t iy, std::size_t it) {
    return trace.frames[it][g.index(ix, iy)];
  };

  using detail::accumulate_power;
  using detail::finish_power;

  switch (order) {
    case MixedOrder::x_y_t: {
      double outer = 0.0;
      for (std::size_t ix = 0; ix < nx; ++ix) {
        double middle = 0.0;
        for (std::size_t iy = 0; iy < ny; ++iy) {
          double inner = 0.0;
          for (std::size_t it = 0; it < nt; ++it) inner = accumulate_power(inner, value(ix, iy, it), r, wt);
          middle = accumulate_power(middle, finish_power(inner, r), q, wy);
        }
        outer = accumulate_power(outer, finish_power(middle, q), p, wx);
      }
      return finish_power(outer, p);
    }
    case MixedOrder::x_yt: {
      double outer = 0.0;
      for (std::size_t ix = 0; ix < nx; ++ix) {
        double inner = 0.0;
        for (std::size_t iy = 0; iy < ny; ++iy) {
          for (std::size_t it = 0; it < nt; ++it) inner = accumulate_power(inner, value(ix, iy, it), q, wy * wt);
        }
        outer = accumulate_power(outer, finish_power(inner, q), p, wx);
      }
      return finish_power(outer, p);
    }
    case MixedOrder::t_xy: {
      double outer = 0.0;
      for (std::size_t it = 0; it < nt; ++it) {
        double inner = 0.0;
        for (const double v : trace.frames[it]) inner = accumulate_power(inner, v, q, wx * wy);
        outer = accumulate_power(outer, finish_power(inner, q), p, wt);
      }
      return finish_power(outer, p);
    }
  }
  return 0.0;
}

}  // namespace gzk
