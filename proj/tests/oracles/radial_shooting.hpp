#pragma once

// Independent radial ground state of -psi'' - psi'/r + psi - psi^3 = 0 by
// shooting on psi(0) with bisection. Shares no code with the library.

#include <array>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

namespace oracle {

struct RadialGroundState {
  double center = 0.0;  // psi(0)
  double mass = 0.0;    // 2 pi int psi^2 r dr
};

namespace detail {

using state = std::array<double, 3>;  // psi, psi', accumulated mass / (2 pi)

enum class Fate { undershoot, overshoot };

inline Fate shoot(double a, double* mass_out) {
  namespace ode = boost::numeric::odeint;
  const double r0 = 1e-4;
  const double b = (a - a * a * a) / 4.0;
  state s{a + b * r0 * r0, 2.0 * b * r0, 0.5 * a * a * r0 * r0};
  auto rhs = [](const state& x, state& dx, double r) {
    dx[0] = x[1];
    dx[1] = -x[1] / r + x[0] - x[0] * x[0] * x[0];
    dx[2] = x[0] * x[0] * r;
  };
  auto stepper = ode::make_dense_output(1e-13, 1e-13, ode::runge_kutta_dopri5<state>());
  stepper.initialize(s, r0, 1e-3);
  while (stepper.current_time() < 60.0) {
    stepper.do_step(rhs);
    const state& x = stepper.current_state();
    if (mass_out) *mass_out = x[2];
    if (x[0] < 0.0) return Fate::overshoot;
    if (x[1] > 0.0) return Fate::undershoot;
    if (mass_out && x[0] < 1e-9 * a) return Fate::undershoot;
  }
  return Fate::undershoot;
}

}  // namespace detail

inline RadialGroundState radial_ground_state() {
  double lo = 1.5, hi = 3.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (detail::shoot(mid, nullptr) == detail::Fate::overshoot) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  RadialGroundState out;
  out.center = lo;
  double m = 0.0;
  detail::shoot(lo, &m);
  out.mass = 2.0 * std::numbers::pi * m;
  return out;
}

}  // namespace oracle
