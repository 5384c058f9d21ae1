#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "gzk/field.hpp"
#include "gzk/fft.hpp"
#include "gzk/grid.hpp"
#include "gzk/spectral_ops.hpp"

namespace gzk {

enum class Integrator { if_rk4, etd_rk4, strang };
enum class DtPolicy { fixed, cfl, heuristic };
enum class NonlinearForm { conservative, direct };

/// Time-integration settings for u_t + d_x Laplacian(u) + u^k u_x = 0.
struct SimulationConfig {
  int k = 2;
  GridSpec grid;
  double t_end = 1.0;
  double dt = 1e-3;  // fixed step, or the ceiling for adaptive policies
  DtPolicy dt_policy = DtPolicy::fixed;
  double cfl = 0.5;              // dt <= cfl / (max|u|^k * kmax)
  double heuristic_s = 1.0;      // dt = dt0 (1 + ||u||_{H^s})^(-2/gamma)
  double heuristic_gamma = 5.0 / 12.0;
  Integrator integrator = Integrator::if_rk4;
  bool dealias = true;
  NonlinearForm form = NonlinearForm::conservative;
  std::size_t snapshot_stride = 100;
  std::size_t diagnostic_stride = 10;
  double blowup_threshold = 1e6;

  void validate() const {
    if (k < 1) throw std::invalid_argument("config: k must be >= 1");
    if (grid.size() == 0) throw std::invalid_argument("config: grid is not set");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("config: T must be positive");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("config: dt must be positive");
    if (!(cfl > 0.0)) throw std::invalid_argument("config: cfl must be positive");
    if (!(heuristic_gamma > 0.0)) throw std::invalid_argument("config: heuristic gamma must be positive");
    if (snapshot_stride < 1 || diagnostic_stride < 1) throw std::invalid_argument("config: strides must be >= 1");
    if (!(blowup_threshold > 0.0)) throw std::invalid_argument("config: blow-up threshold must be positive");
  }
};

/// Half-spectrum pseudo-spectral engine. State vectors hold the raw r2c
/// coefficients (no quadrature weight) of one or more real fields; the
/// linear part is advanced exactly by exp(i dt omega).
class SpectralSolver {
 public:
  using Spectrum = std::vector<cplx>;
  using State = std::vector<Spectrum>;
  using Rhs = std::function<void(const State&, State&)>;

  explicit SpectralSolver(const SimulationConfig& cfg)
      : cfg_(cfg), grid_(cfg.grid), nx_(grid_.nx()), ny_(grid_.ny()), nh_(nx_ / 2 + 1) {
    cfg_.validate();
    const std::size_t m = ny_ * nh_;
    xi_.resize(m);
    k2_.resize(m);
    omega_.resize(m);
    mask_.resize(m);
    for (std::size_t jy = 0; jy < ny_; ++jy) {
      for (std::size_t jx = 0; jx < nh_; ++jx) {
        const std::size_t i = jy * nh_ + jx;
        xi_[i] = grid_.xi_odd(jx);
        k2_[i] = wavenumber_squared(grid_, jx, jy);
        omega_[i] = xi_[i] * xi_[i] * xi_[i] + xi_[i] * grid_.eta(jy) * grid_.eta(jy);
        mask_[i] = (!cfg_.dealias || dealias_keep(grid_, jx, jy)) ? 1.0 : 0.0;
      }
    }
    phys_.resize(grid_.size());
    phys2_.resize(grid_.size());
    phys3_.resize(grid_.size());
    phys4_.resize(grid_.size());
    scratch_.resize(m);
    kmax_ = std::max(grid_.max_wavenumber_x(), grid_.max_wavenumber_y());
  }

  const SimulationConfig& config() const { return cfg_; }
  const GridSpec& grid() const { return grid_; }
  std::size_t spectrum_size() const { return ny_ * nh_; }

  // -- conversions ---------------------------------------------------------

  Spectrum load(const Field& f) {
    Spectrum out(spectrum_size());
    if (f.is_physical()) {
      for (std::size_t i = 0; i < phys_.size(); ++i) phys_[i] = f[i].real();
      fft::forward_real(ny_, nx_, phys_, out);
    } else {
      const double w = 1.0 / grid_.cell_area();
      for (std::size_t jy = 0; jy < ny_; ++jy) {
        for (std::size_t jx = 0; jx < nh_; ++jx) out[jy * nh_ + jx] = w * f.at(jx, jy);
      }
    }
    return out;
  }

  Field unload(const Spectrum& s) {
    to_physical(s, phys_);
    return Field::from_real(grid_, phys_);
  }

  /// Physical samples of a raw half spectrum.
  void to_physical(const Spectrum& s, std::vector<double>& out) {
    std::copy(s.begin(), s.end(), scratch_.begin());
    fft::backward_real(ny_, nx_, scratch_, out);
    const double w = 1.0 / static_cast<double>(grid_.size());
    for (auto& v : out) v *= w;
  }

  void to_spectrum(const std::vector<double>& in, Spectrum& out) { fft::forward_real(ny_, nx_, in, out); }

  // -- right-hand sides ----------------------------------------------------

  /// out = -(u^k u_x)^ for the single-field equation; records max|u| of the
  /// input (or NaN) in last_sup().
  void nonlinear(const Spectrum& u, Spectrum& out) {
    const int k = cfg_.k;
    to_physical(u, phys_);
    track_sup(phys_);
    if (cfg_.form == NonlinearForm::conservative) {
      const double inv = 1.0 / (k + 1);
      for (auto& v : phys_) v = ipow(v, k + 1) * inv;
      to_spectrum(phys_, out);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] *= cplx{0.0, -xi_[i] * mask_[i]};
    } else {
      derivative_x(u, phys2_);
      for (std::size_t i = 0; i < phys_.size(); ++i) phys_[i] = ipow(phys_[i], k) * phys2_[i];
      to_spectrum(phys_, out);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] *= -mask_[i];
    }
  }

  /// Right-hand sides of the split pair for k = 2, term by term:
  ///   v_t + ... = -v^2 v_x,   w_t + ... = -F,
  ///   F = w^2 w_x + 2 w v v_x + 2 w v w_x + v^2 w_x + w^2 v_x.
  void coupled_nonlinear(const Spectrum& v, const Spectrum& w, Spectrum& out_v, Spectrum& out_w) {
    auto& pv = phys_;
    auto& pw = phys2_;
    auto& pvx = phys3_;
    auto& pwx = phys4_;
    to_physical(v, pv);
    to_physical(w, pw);
    double sup = 0.0;
    bool bad = false;
    for (std::size_t i = 0; i < pv.size(); ++i) {
      const double s = std::abs(pv[i] + pw[i]);
      if (!std::isfinite(s)) bad = true;
      sup = std::max(sup, s);
    }
    last_sup_ = bad ? std::numeric_limits<double>::quiet_NaN() : sup;
    derivative_x(v, pvx);
    derivative_x(w, pwx);
    std::vector<double>& a = coupled_a_;
    std::vector<double>& f = coupled_f_;
    a.resize(pv.size());
    f.resize(pv.size());
    for (std::size_t i = 0; i < pv.size(); ++i) {
      const double vv = pv[i], ww = pw[i], vx = pvx[i], wx = pwx[i];
      a[i] = vv * vv * vx;
      f[i] = ww * ww * wx + 2.0 * ww * vv * vx + 2.0 * ww * vv * wx + vv * vv * wx + ww * ww * vx;
    }
    to_spectrum(a, out_v);
    to_spectrum(f, out_w);
    for (std::size_t i = 0; i < out_v.size(); ++i) {
      out_v[i] *= -mask_[i];
      out_w[i] *= -mask_[i];
    }
  }

  Rhs single_rhs() {
    return [this](const State& s, State& out) { nonlinear(s[0], out[0]); };
  }

  double last_sup() const { return last_sup_; }

  // -- time steps ----------------------------------------------------------

  /// One step of the configured integrator for the system
  ///   s_t = i omega s + rhs(s),
  /// every component sharing the same linear part. dt may be negative.
  void step(State& s, double dt, const Rhs& rhs) {
    switch (cfg_.integrator) {
      case Integrator::if_rk4: step_if_rk4(s, dt, rhs); break;
      case Integrator::etd_rk4: step_etd_rk4(s, dt, rhs); break;
      case Integrator::strang: step_strang(s, dt, rhs); break;
    }
  }

  /// Integrating-factor RK4 with an optional extra component: `passenger`
  /// components reuse the stage forces of `driver` components (index map),
  /// which keeps a Duhamel accumulator consistent with its driver exactly.
  void step_if_rk4(State& s, double dt, const Rhs& rhs, const std::vector<std::size_t>& passenger_of = {}) {
    const auto& t = tables(dt);
    const std::size_t nc = s.size();
    const std::size_t driven = nc - passenger_of.size();
    ensure_stage_storage(nc);
    State& k1 = stage_[0];
    State& k2 = stage_[1];
    State& k3 = stage_[2];
    State& k4 = stage_[3];
    State& y = stage_[4];
    auto eval = [&](const State& in, State& out) {
      rhs(in, out);
      for (std::size_t p = 0; p < passenger_of.size(); ++p) out[driven + p] = out[passenger_of[p]];
    };
    const std::size_t m = spectrum_size();
    const double h2 = 0.5 * dt;

    eval(s, k1);
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t i = 0; i < m; ++i) y[c][i] = t.e2[i] * (s[c][i] + h2 * k1[c][i]);
    }
    eval(y, k2);
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t i = 0; i < m; ++i) y[c][i] = t.e2[i] * s[c][i] + h2 * k2[c][i];
    }
    eval(y, k3);
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t i = 0; i < m; ++i) y[c][i] = t.e[i] * s[c][i] + dt * t.e2[i] * k3[c][i];
    }
    eval(y, k4);
    const double h6 = dt / 6.0;
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t i = 0; i < m; ++i) {
        s[c][i] = t.e[i] * s[c][i] +
                  h6 * (t.e[i] * k1[c][i] + 2.0 * t.e2[i] * (k2[c][i] + k3[c][i]) + k4[c][i]);
      }
    }
  }

  /// Cox-Matthews exponential time differencing RK4.
  void step_etd_rk4(State& s, double dt, const Rhs& rhs) {
    const auto& t = tables(dt);
    const std::size_t nc = s.size();
    ensure_stage_storage(nc);
    State& nu = stage_[0];
    State& na = stage_[1];
    State& nb = stage_[2];
    State& nc_ = stage_[3];
    State& a = stage_[4];
    State& b = stage_[5];
    State& c = stage_[6];
    const std::size_t m = spectrum_size();
    rhs(s, nu);
    for (std::size_t q = 0; q < nc; ++q) {
      for (std::size_t i = 0; i < m; ++i) a[q][i] = t.e2[i] * s[q][i] + t.q[i] * nu[q][i];
    }
    rhs(a, na);
    for (std::size_t q = 0; q < nc; ++q) {
      for (std::size_t i = 0; i < m; ++i) b[q][i] = t.e2[i] * s[q][i] + t.q[i] * na[q][i];
    }
    rhs(b, nb);
    for (std::size_t q = 0; q < nc; ++q) {
      for (std::size_t i = 0; i < m; ++i) c[q][i] = t.e2[i] * a[q][i] + t.q[i] * (2.0 * nb[q][i] - nu[q][i]);
    }
    rhs(c, nc_);
    for (std::size_t q = 0; q < nc; ++q) {
      for (std::size_t i = 0; i < m; ++i) {
        s[q][i] = t.e[i] * s[q][i] + t.f1[i] * nu[q][i] + 2.0 * t.f2[i] * (na[q][i] + nb[q][i]) + t.f3[i] * nc_[q][i];
      }
    }
  }

  /// Strang splitting: half linear step, RK4 on the nonlinear flow, half linear step.
  void step_strang(State& s, double dt, const Rhs& rhs) {
    const auto& t = tables(dt);
    const std::size_t nc = s.size();
    ensure_stage_storage(nc);
    const std::size_t m = spectrum_size();
    for (auto& comp : s) {
      for (std::size_t i = 0; i < m; ++i) comp[i] *= t.e2[i];
    }
    State& k1 = stage_[0];
    State& k2 = stage_[1];
    State& k3 = stage_[2];
    State& k4 = stage_[3];
    State& y = stage_[4];
    auto combo = [&](const State& k, double h) {
      for (std::size_t q = 0; q < nc; ++q) {
        for (std::size_t i = 0; i < m; ++i) y[q][i] = s[q][i] + h * k[q][i];
      }
    };
    rhs(s, k1);
    combo(k1, 0.5 * dt);
    rhs(y, k2);
    combo(k2, 0.5 * dt);
    rhs(y, k3);
    combo(k3, dt);
    rhs(y, k4);
    for (std::size_t q = 0; q < nc; ++q) {
      for (std::size_t i = 0; i < m; ++i) {
        s[q][i] += dt / 6.0 * (k1[q][i] + 2.0 * (k2[q][i] + k3[q][i]) + k4[q][i]);
        s[q][i] *= t.e2[i];
      }
    }
  }

  /// s <- exp(i t omega) s
  void propagate(Spectrum& s, double t) const {
    for (std::size_t i = 0; i < s.size(); ++i) s[i] *= std::polar(1.0, t * omega_[i]);
  }

  // -- norms on raw half spectra -------------------------------------------

  /// sum over the full lattice of weight(k^2) |f_hat|^2 / area, with the
  /// quadrature weight restored, i.e. the Plancherel form of a Sobolev norm.
  template <class W>
  double weighted_norm2(const Spectrum& s, W&& weight) const {
    double sum = 0.0;
    for (std::size_t jy = 0; jy < ny_; ++jy) {
      for (std::size_t jx = 0; jx < nh_; ++jx) {
        const std::size_t i = jy * nh_ + jx;
        const double mult = (jx == 0 || jx == nx_ / 2) ? 1.0 : 2.0;
        sum += mult * weight(k2_[i]) * std::norm(s[i]);
      }
    }
    const double w = grid_.cell_area();
    return sum * w * w / grid_.area();
  }

  double l2_norm2(const Spectrum& s) const {
    return weighted_norm2(s, [](double) { return 1.0; });
  }
  double gradient_norm2(const Spectrum& s) const {
    return weighted_norm2(s, [](double k2) { return k2; });
  }
  double sobolev_norm(const Spectrum& s, double sob) const {
    return std::sqrt(weighted_norm2(s, [sob](double k2) { return std::pow(1.0 + k2, sob); }));
  }

  /// Next step size under the configured policy, never above `ceiling`.
  double choose_dt(const Spectrum& u, double ceiling) {
    const double dt0 = cfg_.dt;
    double bound = dt0;
    if (cfg_.dt_policy == DtPolicy::cfl) {
      to_physical(u, phys_);
      double sup = 0.0;
      for (double v : phys_) sup = std::max(sup, std::abs(v));
      const double speed = std::pow(sup, cfg_.k) * kmax_;
      if (speed > 0.0) bound = std::min(dt0, cfg_.cfl / speed);
    } else if (cfg_.dt_policy == DtPolicy::heuristic) {
      bound = dt0 * std::pow(1.0 + sobolev_norm(u, cfg_.heuristic_s), -2.0 / cfg_.heuristic_gamma);
    }
    double dt = dt0;
    for (int m = 0; m < 60 && dt > bound; ++m) dt *= 0.5;
    return std::min(dt, ceiling);
  }

 private:
  struct Tables {
    std::vector<cplx> e, e2, q, f1, f2, f3;
  };

  static double ipow(double v, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= v;
    return r;
  }

  void track_sup(const std::vector<double>& p) {
    double sup = 0.0;
    for (double v : p) {
      const double a = std::abs(v);
      if (!std::isfinite(a)) {
        last_sup_ = std::numeric_limits<double>::quiet_NaN();
        return;
      }
      sup = std::max(sup, a);
    }
    last_sup_ = sup;
  }

  void derivative_x(const Spectrum& u, std::vector<double>& out) {
    for (std::size_t i = 0; i < u.size(); ++i) scratch_[i] = u[i] * cplx{0.0, xi_[i]};
    fft::backward_real(ny_, nx_, scratch_, out);
    const double w = 1.0 / static_cast<double>(grid_.size());
    for (auto& v : out) v *= w;
  }

  void ensure_stage_storage(std::size_t nc) {
    if (stage_.empty() || stage_[0].size() != nc) {
      stage_.assign(7, State(nc, Spectrum(spectrum_size())));
    }
  }

  // Exponential and ETD coefficient tables per step size. phi-type functions
  // come from a 32-point contour average around z = dt * i * omega, which
  // avoids cancellation near z = 0.
  const Tables& tables(double dt) {
    if (auto it = tables_.find(dt); it != tables_.end()) return it->second;
    if (tables_.size() > 16) tables_.clear();
    Tables t;
    const std::size_t m = spectrum_size();
    t.e.resize(m);
    t.e2.resize(m);
    const bool etd = cfg_.integrator == Integrator::etd_rk4;
    if (etd) {
      t.q.resize(m);
      t.f1.resize(m);
      t.f2.resize(m);
      t.f3.resize(m);
    }
    constexpr int points = 32;
    std::vector<cplx> roots(points);
    for (int j = 0; j < points; ++j) roots[j] = std::polar(1.0, 2.0 * std::numbers::pi * (j + 0.5) / points);
    for (std::size_t i = 0; i < m; ++i) {
      const cplx z{0.0, dt * omega_[i]};
      t.e[i] = std::exp(z);
      t.e2[i] = std::exp(0.5 * z);
      if (!etd) continue;
      cplx q = 0.0, f1 = 0.0, f2 = 0.0, f3 = 0.0;
      for (const cplx r : roots) {
        const cplx zr = z + r;
        const cplx ez = std::exp(zr);
        const cplx z3 = zr * zr * zr;
        q += (std::exp(0.5 * zr) - 1.0) / zr;
        f1 += (-4.0 - zr + ez * (4.0 - 3.0 * zr + zr * zr)) / z3;
        f2 += (2.0 + zr + ez * (zr - 2.0)) / z3;
        f3 += (-4.0 - 3.0 * zr - zr * zr + ez * (4.0 - zr)) / z3;
      }
      t.q[i] = dt * q / static_cast<double>(points);
      t.f1[i] = dt * f1 / static_cast<double>(points);
      t.f2[i] = dt * f2 / static_cast<double>(points);
      t.f3[i] = dt * f3 / static_cast<double>(points);
    }
    return tables_.emplace(dt, std::move(t)).first->second;
  }

  SimulationConfig cfg_;
  GridSpec grid_;
  std::size_t nx_, ny_, nh_;
  std::vector<double> xi_, k2_, omega_, mask_;
  std::vector<double> phys_, phys2_, phys3_, phys4_, coupled_a_, coupled_f_;
  Spectrum scratch_;
  std::vector<State> stage_;
  std::map<double, Tables> tables_;
  double kmax_ = 0.0;
  double last_sup_ = 0.0;
};

}  // namespace gzk
