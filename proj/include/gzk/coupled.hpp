#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "gzk/evolve.hpp"
#include "gzk/split.hpp"

namespace gzk {

/// Sign attached to the Duhamel term z. `pde` gives the mild form
/// u = U(t)u0 - int U(t-s) F ds, i.e. z = -int U(t-s) F ds, so that
/// u = v + U(t)w0 + z. `opposite` reports +int U(t-s) F ds.
enum class DuhamelSign { pde, opposite };

/// How z is accumulated along the run.
enum class DuhamelAccumulation {
  trapezoid,         // z_{n+1} = U(dt) z_n - dt/2 (U(dt) F_n + F_{n+1})
  stage_consistent,  // z advanced with the same Runge-Kutta stages as w
};

struct SplitPair {
  double cutoff = 0.0;
  Field v;
  Field w;
  Field z;
  double t = 0.0;
};

inline SplitPair split_pair(const Field& u0, double n, CutoffSet set = CutoffSet::full_frequency) {
  auto parts = low_high_split(as_physical(u0), n, set);
  SplitPair p;
  p.cutoff = n;
  p.v = std::move(parts.low);
  p.w = std::move(parts.high);
  p.z = Field(u0.grid(), Representation::physical);
  return p;
}

struct CoupledOptions {
  DuhamelAccumulation accumulation = DuhamelAccumulation::trapezoid;
  DuhamelSign sign = DuhamelSign::pde;
};

struct CoupledOutcome {
  SplitPair final_pair;  // z carries the requested sign
  bool blew_up = false;
  double last_finite_time = 0.0;
  double sup_v_h1 = 0.0;  // max over steps of ||v(t)||_{H1}
  double sup_z_h1 = 0.0;  // max over steps of ||z(t)||_{H1}
  std::size_t steps = 0;
};

using PairObserver = std::function<void(const SplitPair&)>;

/// Advances the split system for the modified equation (k = 2):
///   v_t + d_x Lap v + v^2 v_x = 0,
///   w_t + d_x Lap w + F(v, w) = 0,
/// together with the Duhamel term z of F. The pair starts from pair.t with
/// z taken from pair (in the requested sign convention).
inline CoupledOutcome coupled_evolve(const SplitPair& pair, const SimulationConfig& cfg_in,
                                     const CoupledOptions& opt = {}, const PairObserver& observer = {}) {
  SimulationConfig cfg = cfg_in;
  if (cfg.k != 2) throw std::invalid_argument("coupled_evolve: the split system is defined for k = 2");
  if (cfg.integrator != Integrator::if_rk4 && opt.accumulation == DuhamelAccumulation::stage_consistent) {
    throw std::invalid_argument("coupled_evolve: stage-consistent accumulation needs the integrating-factor scheme");
  }
  cfg.validate();
  if (!(pair.v.grid() == cfg.grid) || !(pair.w.grid() == cfg.grid) || !(pair.z.grid() == cfg.grid)) {
    throw std::invalid_argument("coupled_evolve: pair grid differs from config grid");
  }
  const double zsign = opt.sign == DuhamelSign::pde ? 1.0 : -1.0;
  SpectralSolver s(cfg);
  using Spectrum = SpectralSolver::Spectrum;
  const std::size_t m = s.spectrum_size();
  const bool staged = opt.accumulation == DuhamelAccumulation::stage_consistent;
  SpectralSolver::State st{s.load(pair.v), s.load(pair.w)};
  Spectrum z = s.load(pair.z);
  for (auto& c : z) c *= zsign;
  if (staged) st.push_back(z);

  // Trapezoid bookkeeping: the first right-hand side evaluated in each step
  // is the forcing at the step's start, which closes the previous increment.
  Spectrum pending(m), first_force(m);
  bool have_pending = false;
  bool first_call = true;
  double pending_half = 0.0;
  auto close_pending = [&](const Spectrum& r) {
    for (std::size_t i = 0; i < m; ++i) z[i] = pending[i] + pending_half * r[i];
    have_pending = false;
  };
  SpectralSolver::Rhs rhs = [&](const SpectralSolver::State& in, SpectralSolver::State& out) {
    s.coupled_nonlinear(in[0], in[1], out[0], out[1]);
    if (first_call) {
      first_force = out[1];
      first_call = false;
    }
  };
  const std::vector<std::size_t> passengers = staged ? std::vector<std::size_t>{1} : std::vector<std::size_t>{};

  std::vector<double> phys(cfg.grid.size());
  CoupledOutcome out;
  auto track = [&](const Spectrum& zs) {
    out.sup_v_h1 = std::max(out.sup_v_h1, s.sobolev_norm(st[0], 1.0));
    out.sup_z_h1 = std::max(out.sup_z_h1, s.sobolev_norm(zs, 1.0));
  };
  auto emit = [&](double t, const Spectrum& zs) {
    SplitPair p;
    p.cutoff = pair.cutoff;
    p.v = s.unload(st[0]);
    p.w = s.unload(st[1]);
    Spectrum signed_z = zs;
    for (auto& c : signed_z) c *= zsign;
    p.z = s.unload(signed_z);
    p.t = t;
    return p;
  };
  track(z);
  if (observer) observer(emit(pair.t, z));

  double t = pair.t;
  const double t_end = pair.t + cfg.t_end;
  std::size_t n = 0;
  while (t < t_end) {
    // the CFL bound follows the full solution v + w
    Spectrum sum = st[0];
    for (std::size_t i = 0; i < m; ++i) sum[i] += st[1][i];
    double h = s.choose_dt(sum, cfg.dt);
    double t_next = t + h;
    if (t_next > t_end || t_end - t_next < 1e-9 * h) {
      t_next = t_end;
      h = t_next - t;
    }
    first_call = true;
    if (staged) {
      s.step_if_rk4(st, h, rhs, passengers);
    } else {
      s.step(st, h, rhs);
      if (have_pending) close_pending(first_force);
      // open this step's increment: U(h) z_n + h/2 U(h) r_n
      const Spectrum r0 = first_force;
      pending = z;
      for (std::size_t i = 0; i < m; ++i) pending[i] += 0.5 * h * r0[i];
      s.propagate(pending, h);
      pending_half = 0.5 * h;
      have_pending = true;
    }
    ++n;
    for (std::size_t i = 0; i < m; ++i) sum[i] = st[0][i] + st[1][i];
    if (!(detail::sup_of(s, sum, phys) <= cfg.blowup_threshold)) {
      out.blew_up = true;
      out.last_finite_time = t;
      out.steps = n;
      break;
    }
    t = t_next;
    if (!staged) {
      // force at the new time closes the increment just opened
      Spectrum rv(m), rw(m);
      if (t >= t_end || (observer && n % cfg.snapshot_stride == 0) || n % cfg.diagnostic_stride == 0) {
        s.coupled_nonlinear(st[0], st[1], rv, rw);
        close_pending(rw);
        first_force = rw;
      }
    }
    const Spectrum& zs = staged ? st[2] : z;
    if (staged || !have_pending) track(zs);
    if (observer && (t >= t_end || n % cfg.snapshot_stride == 0)) observer(emit(t, zs));
  }
  if (!out.blew_up) {
    out.last_finite_time = t;
    out.steps = n;
  }
  if (!staged && have_pending) {
    Spectrum rv(m), rw(m);
    s.coupled_nonlinear(st[0], st[1], rv, rw);
    close_pending(rw);
  }
  out.final_pair = emit(t, staged ? st[2] : z);
  return out;
}

}  // namespace gzk
