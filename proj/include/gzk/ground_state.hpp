#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "gzk/field.hpp"
#include "gzk/interpolate.hpp"
#include "gzk/norms.hpp"
#include "gzk/snapshot.hpp"
#include "gzk/spectral_ops.hpp"

namespace gzk {

class GroundStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Positive radial solution of -c phi + Laplacian(phi) + phi^(k+1)/(k+1) = 0.
struct GroundState {
  int k = 2;
  double c = 1.0;
  Field profile;
  double residual = 0.0;         // L2 norm of the elliptic residual
  double mass = 0.0;             // ||phi||^2
  double gradient_energy = 0.0;  // ||grad phi||^2
  double potential = 0.0;        // int phi^(k+2)
  int iterations = 0;
  std::vector<double> normalization_history;  // Petviashvili ratio per iteration
};

struct GroundStateOptions {
  double tol = 1e-10;
  int max_iter = 2000;
  bool symmetrize = false;
};

/// -c phi + Laplacian(phi) + phi^(k+1)/(k+1), pseudo-spectrally.
inline Field elliptic_residual(const Field& phi, int k, double c) {
  const Field u = as_physical(phi);
  Field r = laplacian(u);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double v = u[i].real();
    r[i] = cplx{r[i].real() - c * v + std::pow(v, k + 1) / (k + 1), 0.0};
  }
  return r;
}

namespace detail {

inline void measure_ground_state(GroundState& g) {
  const Field& u = g.profile;
  g.residual = l2_norm(elliptic_residual(u, g.k, g.c));
  g.mass = std::pow(l2_norm(u), 2);
  g.gradient_energy = std::pow(gradient_norm(u), 2);
  double p = 0.0;
  for (const auto& z : u.data()) p += std::pow(z.real(), g.k + 2);
  g.potential = p * u.grid().cell_area();
}

// Mean |u| along the box edges relative to max |u|. The mean rather than the
// max keeps grid-scale ringing along the coordinate axes of a marginally
// resolved profile from being mistaken for a truncated tail.
inline double boundary_ratio(const Field& u) {
  const auto& g = u.grid();
  double edge = 0.0, peak = 0.0;
  std::size_t count = 0;
  for (std::size_t iy = 0; iy < g.ny(); ++iy) {
    for (std::size_t ix = 0; ix < g.nx(); ++ix) {
      const double v = std::abs(u.at(ix, iy).real());
      peak = std::max(peak, v);
      if (ix == 0 || iy == 0) {
        edge += v;
        ++count;
      }
    }
  }
  return peak > 0.0 ? edge / static_cast<double>(count) / peak : 0.0;
}

// Average over the eight symmetries of the square about the grid centre.
inline Field symmetrize_square(const Field& u) {
  const auto& g = u.grid();
  const std::size_t n = g.nx();
  Field out(g, Representation::physical);
  auto ref = [n](std::size_t i) { return (n - i) % n; };
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      const double s = u.at(ix, iy).real() + u.at(ref(ix), iy).real() + u.at(ix, ref(iy)).real() +
                       u.at(ref(ix), ref(iy)).real() + u.at(iy, ix).real() + u.at(ref(iy), ix).real() +
                       u.at(iy, ref(ix)).real() + u.at(ref(iy), ref(ix)).real();
      out.at(ix, iy) = s / 8.0;
    }
  }
  return out;
}

// Diameter of the disc with the same area as the set {u >= max/2}.
inline double half_max_diameter(const Field& u) {
  double peak = 0.0;
  for (const auto& z : u.data()) peak = std::max(peak, z.real());
  std::size_t count = 0;
  for (const auto& z : u.data()) count += z.real() >= 0.5 * peak ? 1 : 0;
  return 2.0 * std::sqrt(static_cast<double>(count) * u.grid().cell_area() / std::numbers::pi);
}

}  // namespace detail

/// Relative change of the profile under a 90 degree rotation about the centre.
inline double rotation_asymmetry(const Field& u) {
  const Field p = as_physical(u);
  const auto& g = p.grid();
  if (g.nx() != g.ny() || g.lx() != g.ly()) throw std::invalid_argument("rotation_asymmetry: grid is not square");
  const std::size_t n = g.nx();
  double diff = 0.0, norm = 0.0;
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      const double a = p.at(ix, iy).real();
      const double b = p.at((n - iy) % n, ix).real();
      diff += (a - b) * (a - b);
      norm += a * a;
    }
  }
  return norm > 0.0 ? std::sqrt(diff / norm) : 0.0;
}

/// Petviashvili iteration
///   phi_hat <- M^gamma N_hat / (c + |k|^2),  N = phi^(k+1)/(k+1),  gamma = (k+1)/k,
///   M = sum (c + |k|^2)|phi_hat|^2 / sum Re(conj(phi_hat) N_hat),
/// seeded with exp(-(r/2)^2) at the grid centre. Converged once both the
/// step size and the residual (L2, absolute) are below tol.
inline GroundState solve_ground_state(int k, double c, const GridSpec& grid, double tol = 1e-10, int max_iter = 2000,
                                      bool symmetrize = false) {
  if (k < 1) throw std::invalid_argument("ground state: k must be >= 1");
  if (!(c > 0.0)) throw std::invalid_argument("ground state: c must be positive");
  if (!(tol > 0.0) || max_iter < 1) throw std::invalid_argument("ground state: bad tolerance or iteration cap");
  if (symmetrize && (grid.nx() != grid.ny() || grid.lx() != grid.ly())) {
    throw std::invalid_argument("ground state: symmetrization needs a square grid");
  }

  const double gamma = static_cast<double>(k + 1) / k;
  std::vector<double> op(grid.size());
  for (std::size_t jy = 0; jy < grid.ny(); ++jy) {
    for (std::size_t jx = 0; jx < grid.nx(); ++jx) op[grid.index(jx, jy)] = c + wavenumber_squared(grid, jx, jy);
  }

  GroundState gs;
  gs.k = k;
  gs.c = c;
  Field phi = Field::from_function(grid, [](double x, double y) { return std::exp(-(x * x + y * y) / 4.0); });

  for (int it = 1; it <= max_iter; ++it) {
    const Field phi_hat = to_spectral(phi);
    Field nl(grid, Representation::physical);
    for (std::size_t i = 0; i < nl.size(); ++i) nl[i] = std::pow(phi[i].real(), k + 1) / (k + 1);
    Field nl_hat = to_spectral(nl);

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < op.size(); ++i) {
      num += op[i] * std::norm(phi_hat[i]);
      den += (std::conj(phi_hat[i]) * nl_hat[i]).real();
    }
    const double m = num / den;
    if (!(den > 0.0) || !std::isfinite(m) || m > 1e12) {
      throw GroundStateError("ground state: iteration collapsed (normalization ratio diverged)");
    }
    gs.normalization_history.push_back(m);
    const double scale = std::pow(m, gamma);
    for (std::size_t i = 0; i < op.size(); ++i) nl_hat[i] *= scale / op[i];
    Field next = real_part(to_physical(nl_hat));
    if (symmetrize) next = detail::symmetrize_square(next);

    const double step = l2_norm(next - phi);
    const double size = l2_norm(next);
    if (!(size > 1e-300) || !std::isfinite(size)) throw GroundStateError("ground state: iteration collapsed to zero");
    phi = std::move(next);
    if (step < tol && l2_norm(elliptic_residual(phi, k, c)) <= tol) {
      gs.iterations = it;
      gs.profile = std::move(phi);
      detail::measure_ground_state(gs);
      if (detail::boundary_ratio(gs.profile) > 1e-8) {
        throw GroundStateError("ground state: box too small, mean boundary value exceeds 1e-8 of the peak");
      }
      return gs;
    }
  }
  throw GroundStateError("ground state: no convergence within " + std::to_string(max_iter) + " iterations");
}

inline GroundState solve_ground_state(int k, double c, const GridSpec& grid, const GroundStateOptions& opt) {
  return solve_ground_state(k, c, grid, opt.tol, opt.max_iter, opt.symmetrize);
}

namespace detail {

inline GroundState finish_rescale(const GroundState& src, double c, Field profile) {
  GroundState out;
  out.k = src.k;
  out.c = c;
  out.profile = std::move(profile);
  out.iterations = 0;
  measure_ground_state(out);
  return out;
}

inline void check_width(const GroundState& src, double ratio, const GridSpec& target) {
  const double width = half_max_diameter(src.profile) / std::sqrt(ratio);
  if (width < 4.0 * std::max(target.dx(), target.dy())) {
    throw GroundStateError("rescale: profile narrower than 4 grid cells, it would alias");
  }
}

}  // namespace detail

/// phi_c(x, y) = (c/c0)^(1/k) phi_c0(sqrt(c/c0) x, sqrt(c/c0) y) on the
/// source grid shrunk by sqrt(c/c0): same samples up to the amplitude factor,
/// so the rescaling is exact.
inline GroundState rescale_ground_state(const GroundState& src, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("rescale: c must be positive");
  const double ratio = c / src.c;
  const GridSpec target = src.profile.grid().scaled(std::sqrt(ratio));
  detail::check_width(src, ratio, target);
  Field p = as_physical(src.profile);
  Field out(target, Representation::physical, std::vector<cplx>(p.data().begin(), p.data().end()));
  out *= std::pow(ratio, 1.0 / src.k);
  return detail::finish_rescale(src, c, std::move(out));
}

/// Same family member, sampled on an arbitrary grid by trigonometric
/// interpolation of the source profile.
inline GroundState rescale_ground_state(const GroundState& src, double c, const GridSpec& target) {
  if (!(c > 0.0)) throw std::invalid_argument("rescale: c must be positive");
  const double ratio = c / src.c;
  detail::check_width(src, ratio, target);
  Field out = resample(src.profile, target, std::sqrt(ratio));
  out *= std::pow(ratio, 1.0 / src.k);
  if (detail::boundary_ratio(out) > 1e-8) {
    throw GroundStateError("rescale: profile reaches the boundary of the target box");
  }
  return detail::finish_rescale(src, c, std::move(out));
}

/// Identities for psi = phi / sqrt(3), which solves -Laplacian(psi) + psi - psi^3 = 0
/// when phi is the k = 2, c = 1 ground state:
///   int psi^2 = (1/2) int psi^4,   int |grad psi|^2 = (1/2) int psi^4,
/// and the resulting equality case of the sharp Gagliardo-Nirenberg bound
///   (1/6) ||psi||_4^4 = (1/3) (||psi||_2^2 / ||psi||_2^2) ||grad psi||_2^2.
struct PohozaevReport {
  double psi_mass = 0.0;
  double psi_gradient = 0.0;
  double psi_quartic = 0.0;
  double mass_identity_error = 0.0;
  double gradient_identity_error = 0.0;
  double gn_equality_error = 0.0;
};

inline PohozaevReport pohozaev_check(const GroundState& g) {
  if (g.k != 2 || g.c != 1.0) throw std::invalid_argument("pohozaev_check: needs the k = 2, c = 1 ground state");
  if (g.profile.size() == 0 || !(l2_norm(g.profile) > 0.0)) {
    throw std::invalid_argument("pohozaev_check: zero profile");
  }
  if (!(g.residual <= 1e-6 * std::sqrt(g.mass))) throw std::invalid_argument("pohozaev_check: profile is not converged");
  const Field psi = (1.0 / std::sqrt(3.0)) * as_physical(g.profile);
  PohozaevReport r;
  r.psi_mass = std::pow(l2_norm(psi), 2);
  r.psi_gradient = std::pow(gradient_norm(psi), 2);
  r.psi_quartic = std::pow(lp_norm(psi, 4.0), 4);
  r.mass_identity_error = std::abs(r.psi_mass - 0.5 * r.psi_quartic) / r.psi_mass;
  r.gradient_identity_error = std::abs(r.psi_gradient - 0.5 * r.psi_quartic) / r.psi_gradient;
  const double rhs = r.psi_gradient / 3.0;
  r.gn_equality_error = std::abs(r.psi_quartic / 6.0 - rhs) / rhs;
  return r;
}

/// sqrt(3) ||psi||_{L2} = ||phi||_{L2} for the k = 2, c = 1 ground state.
inline double critical_mass(const GridSpec& grid, const GroundStateOptions& opt = {}) {
  return std::sqrt(solve_ground_state(2, 1.0, grid, opt).mass);
}

// ---------------------------------------------------------------------------
// Persistence: <prefix>.gzk snapshot plus <prefix>.meta key-value sidecar.

inline void write_ground_state(const std::string& prefix, const GroundState& g) {
  write_snapshot(prefix + ".gzk", g.profile, 0.0);
  std::ofstream meta(prefix + ".meta");
  if (!meta) throw std::runtime_error("cannot write " + prefix + ".meta");
  meta.precision(17);
  meta << "k = " << g.k << "\n"
       << "c = " << g.c << "\n"
       << "residual = " << g.residual << "\n"
       << "mass = " << g.mass << "\n"
       << "gradient_energy = " << g.gradient_energy << "\n"
       << "potential = " << g.potential << "\n"
       << "iterations = " << g.iterations << "\n";
}

inline GroundState read_ground_state(const std::string& prefix) {
  std::ifstream meta(prefix + ".meta");
  if (!meta) throw std::runtime_error("cannot read " + prefix + ".meta");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(meta, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  for (const char* key : {"k", "c"}) {
    if (!kv.count(key)) throw std::runtime_error(prefix + ".meta: missing key " + std::string(key));
  }
  GroundState g;
  g.k = std::stoi(kv["k"]);
  g.c = std::stod(kv["c"]);
  g.profile = read_snapshot(prefix + ".gzk").field;
  if (kv.count("iterations")) g.iterations = std::stoi(kv["iterations"]);
  detail::measure_ground_state(g);
  return g;
}

}  // namespace gzk
