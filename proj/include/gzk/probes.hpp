#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gzk/field.hpp"
#include "gzk/norms.hpp"
#include "gzk/parallel.hpp"
#include "gzk/propagator.hpp"
#include "gzk/random_field.hpp"

namespace gzk {

/// Linear estimates probed on random data:
///   smoothing   : ||d_x U(t) f||_{L^inf_x L^2_{yT}}              / ||f||_{L2}
///   strichartz  : ||D_x^{theta eps/2} U(t) f||_{L^q_T L^p_{xy}}   / ||f||_{L2},
///                 p = 2/(1-theta), q = 6/(theta (2+eps))
///   maximal_l4  : ||U(t) f||_{L^4_x L^inf_{yT}} / ||(1+D_x)^{s1} (1+D_y)^{r1} f||_{L2}
///   maximal_l2  : ||U(t) f||_{L^2_x L^inf_{yT}} / ||f||_{H^s}
enum class ProbeKind { smoothing, strichartz, maximal_l4, maximal_l2 };

inline const char* probe_name(ProbeKind k) {
  switch (k) {
    case ProbeKind::smoothing: return "smoothing";
    case ProbeKind::strichartz: return "strichartz";
    case ProbeKind::maximal_l4: return "maximal_L4";
    case ProbeKind::maximal_l2: return "maximal_L2";
  }
  return "unknown";
}

inline ProbeKind parse_probe_kind(const std::string& s) {
  if (s == "smoothing") return ProbeKind::smoothing;
  if (s == "strichartz") return ProbeKind::strichartz;
  if (s == "maximal_L4" || s == "maximal_l4") return ProbeKind::maximal_l4;
  if (s == "maximal_L2" || s == "maximal_l2") return ProbeKind::maximal_l2;
  throw std::invalid_argument("unknown probe kind: " + s);
}

struct ProbeParams {
  ProbeKind kind = ProbeKind::smoothing;
  double theta = 1.0;
  double epsilon = 0.25;
  double s1 = 0.3;
  double r1 = 0.6;
  double s = 0.8;
  double T = 0.5;
  std::size_t count = 100;
  std::uint64_t seed = 1;
  long band = 16;
  std::size_t time_samples = 128;

  void validate() const {
    if (!(T > 0.0 && T <= 1.0)) throw std::invalid_argument("probe: T must lie in (0, 1]");
    if (count < 10) throw std::invalid_argument("probe: count must be >= 10");
    if (time_samples < 2) throw std::invalid_argument("probe: need at least 2 time samples");
    if (kind == ProbeKind::strichartz) {
      if (!(epsilon >= 0.0 && epsilon < 0.5)) throw std::invalid_argument("probe: epsilon must lie in [0, 1/2)");
      if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("probe: theta must lie in [0, 1]");
    }
    if (kind == ProbeKind::maximal_l4 && !(s1 > 0.25 && r1 > 0.5)) {
      throw std::invalid_argument("probe: maximal_L4 needs s1 > 1/4 and r1 > 1/2");
    }
    if (kind == ProbeKind::maximal_l2 && !(s > 0.75)) throw std::invalid_argument("probe: maximal_L2 needs s > 3/4");
  }
};

struct ProbeSample {
  std::uint64_t seed = 0;
  double ratio = 0.0;
};

struct ProbeResult {
  ProbeParams params;
  GridSpec grid;
  std::vector<ProbeSample> samples;
  double max = 0.0;
  double mean = 0.0;
};

namespace detail {

inline double probe_ratio(const Field& f, const ProbeParams& p, const DispersionSymbol& symbol) {
  const auto& g = f.grid();
  const Field spec = as_spectral(f);
  const double f_l2 = l2_norm(spec);
  if (!(f_l2 > 0.0)) throw std::invalid_argument("probe: ensemble produced a zero field");

  // spectral multiplier applied before the group, and the denominator
  Field weighted(g, Representation::spectral);
  double rhs = f_l2;
  double rhs2 = 0.0;
  for (std::size_t jy = 0; jy < g.ny(); ++jy) {
    for (std::size_t jx = 0; jx < g.nx(); ++jx) {
      const double xi = g.xi(jx), eta = g.eta(jy);
      cplx m = 1.0;
      double w = 1.0;
      switch (p.kind) {
        case ProbeKind::smoothing: m = cplx{0.0, g.xi_odd(jx)}; break;
        case ProbeKind::strichartz: m = p.theta * p.epsilon == 0.0 ? 1.0 : std::pow(std::abs(xi), 0.5 * p.theta * p.epsilon); break;
        case ProbeKind::maximal_l4: w = std::pow(1.0 + std::abs(xi), 2 * p.s1) * std::pow(1.0 + std::abs(eta), 2 * p.r1); break;
        case ProbeKind::maximal_l2: w = std::pow(1.0 + xi * xi + eta * eta, p.s); break;
      }
      weighted.at(jx, jy) = m * spec.at(jx, jy);
      rhs2 += w * std::norm(spec.at(jx, jy));
    }
  }
  if (p.kind == ProbeKind::maximal_l4 || p.kind == ProbeKind::maximal_l2) rhs = std::sqrt(rhs2 / g.area());

  const double dt = p.T / static_cast<double>(p.time_samples);
  SpaceTimeTrace trace{g, dt, {}};
  for (std::size_t n = 0; n < p.time_samples; ++n) trace.push(apply_group(weighted, dt * static_cast<double>(n), symbol));

  double lhs = 0.0;
  switch (p.kind) {
    case ProbeKind::smoothing: lhs = mixed_norm(trace, infinity, 2.0, 2.0, MixedOrder::x_yt); break;
    case ProbeKind::strichartz: {
      const double ps = p.theta == 1.0 ? infinity : 2.0 / (1.0 - p.theta);
      const double qt = p.theta == 0.0 ? infinity : 6.0 / (p.theta * (2.0 + p.epsilon));
      lhs = mixed_norm(trace, qt, ps, 1.0, MixedOrder::t_xy);
      break;
    }
    case ProbeKind::maximal_l4: lhs = mixed_norm(trace, 4.0, infinity, 1.0, MixedOrder::x_yt); break;
    case ProbeKind::maximal_l2: lhs = mixed_norm(trace, 2.0, infinity, 1.0, MixedOrder::x_yt); break;
  }
  return lhs / rhs;
}

}  // namespace detail

/// Ratio statistics over `count` random band-limited fields with seeds
/// seed, seed+1, ... Samples are independent and evaluated in parallel.
inline ProbeResult estimate_probe(const GridSpec& grid, const ProbeParams& p) {
  p.validate();
  ProbeResult r;
  r.params = p;
  r.grid = grid;
  r.samples.resize(p.count);
  const DispersionSymbol symbol(grid);
  parallel_for(p.count, [&](std::size_t i) {
    const std::uint64_t seed = p.seed + i;
    const Field f = band_limited_random_field(grid, seed, p.band);
    r.samples[i] = {seed, detail::probe_ratio(f, p, symbol)};
  });
  double sum = 0.0;
  for (const auto& s : r.samples) {
    if (!std::isfinite(s.ratio)) throw std::runtime_error("probe: non-finite ratio");
    r.max = std::max(r.max, s.ratio);
    sum += s.ratio;
  }
  r.mean = sum / static_cast<double>(r.samples.size());
  return r;
}

/// CSV with columns kind,sample_seed,ratio,grid,T.
inline void write_probe_csv(const std::string& path, const std::vector<ProbeResult>& results) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "kind,sample_seed,ratio,grid,T\n";
  char buf[256];
  for (const auto& r : results) {
    const std::string grid = std::to_string(r.grid.nx()) + "x" + std::to_string(r.grid.ny());
    for (const auto& s : r.samples) {
      std::snprintf(buf, sizeof buf, "%s,%llu,%.17g,%s,%.17g\n", probe_name(r.params.kind),
                    static_cast<unsigned long long>(s.seed), s.ratio, grid.c_str(), r.params.T);
      out << buf;
    }
  }
}

}  // namespace gzk
