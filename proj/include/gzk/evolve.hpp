#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gzk/diagnostics.hpp"
#include "gzk/field.hpp"
#include "gzk/solver.hpp"

namespace gzk {

/// Pseudo-spectral u^k u_x. The conservative form differentiates
/// u^{k+1}/(k+1); the direct form multiplies u^k by the spectral u_x.
inline Field nonlinear_term(const Field& u, int k, bool dealias, NonlinearForm form = NonlinearForm::conservative) {
  if (k < 1) throw std::invalid_argument("nonlinear_term: k must be >= 1");
  SimulationConfig cfg;
  cfg.k = k;
  cfg.grid = u.grid();
  cfg.dealias = dealias;
  cfg.form = form;
  SpectralSolver s(cfg);
  auto spec = s.load(u);
  SpectralSolver::Spectrum out(spec.size());
  s.nonlinear(spec, out);
  for (auto& z : out) z = -z;
  return s.unload(out);
}

namespace detail {

inline DiagnosticRow measure(SpectralSolver& s, const SpectralSolver::Spectrum& u, double t,
                             std::vector<double>& phys) {
  const int k = s.config().k;
  const double w = s.grid().cell_area();
  s.to_physical(u, phys);
  double sup = 0.0, power = 0.0, abs_power = 0.0;
  for (double v : phys) {
    sup = std::max(sup, std::abs(v));
    const double p = std::pow(v, k + 2);
    power += p;
    abs_power += std::abs(p);
  }
  DiagnosticRow r;
  r.t = t;
  r.i1 = s.l2_norm2(u);
  const double g2 = s.gradient_norm2(u);
  r.grad_l2 = std::sqrt(g2);
  r.h1 = std::sqrt(r.i1 + g2);
  r.linf = sup;
  r.abs_power = abs_power * w;
  r.i2 = g2 - 2.0 / ((k + 1.0) * (k + 2.0)) * power * w;
  return r;
}

inline double sup_of(SpectralSolver& s, const SpectralSolver::Spectrum& u, std::vector<double>& phys) {
  s.to_physical(u, phys);
  double sup = 0.0;
  for (double v : phys) {
    if (!std::isfinite(v)) return std::numeric_limits<double>::quiet_NaN();
    sup = std::max(sup, std::abs(v));
  }
  return sup;
}

}  // namespace detail

/// One step of size dt (negative dt runs the equation backward).
inline Field step(const Field& u, double dt, const SimulationConfig& cfg) {
  SpectralSolver s(cfg);
  SpectralSolver::State st{s.load(u)};
  s.step(st, dt, s.single_rhs());
  return s.unload(st[0]);
}

struct EvolutionOutcome {
  Field final_state;
  ConservedDiagnostics diagnostics;
  bool blew_up = false;
  double final_time = 0.0;        // time of final_state
  double last_finite_time = 0.0;  // last time with a finite state below threshold
  double peak_sup = 0.0;
  std::size_t steps = 0;
  bool stopped = false;  // ended by the stop predicate before t_end
};

/// Called with (t, snapshot) at t = 0, every snapshot stride, and at the end.
using SnapshotObserver = std::function<void(double, const Field&)>;

/// Checked on every diagnostic row; returning true ends the run there.
using StopPredicate = std::function<bool(const DiagnosticRow&)>;

/// Integrates from t = 0 to cfg.t_end. Exceeding the sup-norm threshold or a
/// non-finite value ends the run with blew_up set; that is a result, not an
/// error.
inline EvolutionOutcome evolve(const Field& u0, const SimulationConfig& cfg, const SnapshotObserver& observer = {},
                               const StopPredicate& stop = {}) {
  cfg.validate();
  if (!(u0.grid() == cfg.grid)) throw std::invalid_argument("evolve: datum grid differs from config grid");
  SpectralSolver s(cfg);
  const auto rhs = s.single_rhs();
  SpectralSolver::State st{s.load(u0)};
  std::vector<double> phys(cfg.grid.size());

  EvolutionOutcome out;
  out.diagnostics.k = cfg.k;
  double t = 0.0;
  const auto first = detail::measure(s, st[0], t, phys);
  if (!std::isfinite(first.linf)) throw std::invalid_argument("evolve: non-finite datum");
  out.diagnostics.append(first);
  out.peak_sup = first.linf;
  if (observer) observer(t, s.unload(st[0]));

  std::size_t n = 0;
  while (t < cfg.t_end) {
    double h = s.choose_dt(st[0], cfg.dt);
    double t_next = t + h;
    if (t_next > cfg.t_end || cfg.t_end - t_next < 1e-9 * h) {
      t_next = cfg.t_end;
      h = t_next - t;
    }
    s.step(st, h, rhs);
    ++n;
    const double sup = detail::sup_of(s, st[0], phys);
    if (!(sup <= cfg.blowup_threshold)) {
      out.blew_up = true;
      out.last_finite_time = t;
      out.final_time = t_next;
      out.steps = n;
      if (std::isfinite(sup)) out.peak_sup = std::max(out.peak_sup, sup);
      out.final_state = s.unload(st[0]);
      return out;
    }
    out.peak_sup = std::max(out.peak_sup, sup);
    t = t_next;
    bool last = t >= cfg.t_end;
    if (last || n % cfg.diagnostic_stride == 0) {
      out.diagnostics.append(detail::measure(s, st[0], t, phys));
      if (!last && stop && stop(out.diagnostics.rows.back())) {
        out.stopped = true;
        last = true;
      }
    }
    if (observer && (last || n % cfg.snapshot_stride == 0)) observer(t, s.unload(st[0]));
    if (out.stopped) break;
  }
  out.final_state = s.unload(st[0]);
  out.final_time = t;
  out.last_finite_time = t;
  out.steps = n;
  return out;
}

}  // namespace gzk
