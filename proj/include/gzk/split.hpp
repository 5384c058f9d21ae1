#pragma once

#include <cmath>
#include <stdexcept>

#include "gzk/field.hpp"

namespace gzk {

/// Which frequencies count as "low" in a sharp cutoff at N.
enum class CutoffSet {
  full_frequency,  // |(xi, eta)| < N
  x_frequency,     // |xi| < N
};

/// Low/high decomposition u0 = v0 + w0 with v0_hat = chi_{low} u0_hat.
struct FrequencySplit {
  double cutoff = 0.0;
  CutoffSet set = CutoffSet::full_frequency;
  Field low;   // v0
  Field high;  // w0
};

inline bool is_low_frequency(const GridSpec& g, std::size_t jx, std::size_t jy, double n, CutoffSet set) {
  if (set == CutoffSet::x_frequency) return std::abs(g.xi(jx)) < n;
  return std::hypot(g.xi(jx), g.eta(jy)) < n;
}

/// Sharp spectral cutoff at N. Both parts come back in the input's
/// representation; v0 + w0 reproduces u0 exactly in spectral space.
inline FrequencySplit low_high_split(const Field& f, double n, CutoffSet set = CutoffSet::full_frequency) {
  if (!(n > 0.0)) throw std::invalid_argument("low_high_split: cutoff must be positive");
  const Field spec = as_spectral(f);
  const auto& g = spec.grid();
  Field low(g, Representation::spectral);
  Field high(g, Representation::spectral);
  for (std::size_t jy = 0; jy < g.ny(); ++jy) {
    for (std::size_t jx = 0; jx < g.nx(); ++jx) {
      if (is_low_frequency(g, jx, jy, n, set)) {
        low.at(jx, jy) = spec.at(jx, jy);
      } else {
        high.at(jx, jy) = spec.at(jx, jy);
      }
    }
  }
  if (f.is_physical()) {
    return {n, set, real_part(to_physical(low)), real_part(to_physical(high))};
  }
  return {n, set, std::move(low), std::move(high)};
}

}  // namespace gzk
