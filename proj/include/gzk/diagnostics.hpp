#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace gzk {

struct DiagnosticRow {
  double t = 0.0;
  double i1 = 0.0;         // int u^2
  double i2 = 0.0;         // int |grad u|^2 - 2/((k+1)(k+2)) int u^{k+2}
  double h1 = 0.0;         // ||u||_{H1}
  double linf = 0.0;       // max |u|
  double grad_l2 = 0.0;    // ||grad u||_{L2}
  double abs_power = 0.0;  // int |u|^{k+2}
};

/// Time series of conserved quantities and norms along one evolution.
struct ConservedDiagnostics {
  int k = 2;
  std::vector<DiagnosticRow> rows;

  void append(const DiagnosticRow& r) {
    if (!rows.empty() && !(r.t > rows.back().t)) throw std::logic_error("diagnostics: time must increase");
    rows.push_back(r);
  }

  double max_relative_i1_drift() const {
    double d = 0.0;
    for (const auto& r : rows) d = std::max(d, std::abs(r.i1 / rows.front().i1 - 1.0));
    return d;
  }

  /// max |I2(t) - I2(0)| / max(1, |I2(0)|)
  double max_i2_drift() const {
    double d = 0.0;
    const double scale = std::max(1.0, std::abs(rows.front().i2));
    for (const auto& r : rows) d = std::max(d, std::abs(r.i2 - rows.front().i2) / scale);
    return d;
  }

  double max_h1() const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, r.h1);
    return m;
  }

  double max_grad() const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, r.grad_l2);
    return m;
  }

  void write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "t,I1,I2,H1,Linf,grad_L2\n";
    char buf[256];
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.i1, r.i2, r.h1, r.linf,
                    r.grad_l2);
      out << buf;
    }
  }
};

/// Per-sample evaluation of the a priori energy bound for k >= 3:
///   X(t) <= C + c_b ||u0||^2 X(t)^{k/2},   X = ||u(t)||_{H1}^2,
/// with C = I1(u0) + I2(u0) and c_b = 2/((k+1)(k+2)) times a
/// Gagliardo-Nirenberg constant for int|u|^{k+2} <= C_GN ||u||^2 ||grad u||^k.
/// A positive gn_constant is used as C_GN; otherwise the largest measured
/// ratio stands in for it.
struct BootstrapReport {
  double constant = 0.0;      // C
  double gn_constant = 0.0;   // C_GN used in c_b
  double gn_ratio_max = 0.0;  // largest measured GN ratio
  double gn_ratio_min = 0.0;
  double min_margin = 0.0;    // min over samples of C + c_b ||u0||^2 X^{k/2} - X
  double min_margin_time = 0.0;
  std::vector<double> margins;
  bool holds() const { return min_margin >= 0.0; }
};

inline BootstrapReport energy_bootstrap_report(const ConservedDiagnostics& diag, int k, double gn_constant = 0.0) {
  if (k < 3) throw std::invalid_argument("bootstrap: requires k >= 3");
  if (diag.rows.empty()) throw std::invalid_argument("bootstrap: no diagnostics");
  BootstrapReport r;
  const auto& first = diag.rows.front();
  const double mass0 = first.i1;
  r.constant = first.i1 + first.i2;
  r.gn_ratio_min = std::numeric_limits<double>::infinity();
  for (const auto& row : diag.rows) {
    const double den = row.i1 * std::pow(row.grad_l2, k);
    if (den > 0.0) {
      const double ratio = row.abs_power / den;
      r.gn_ratio_max = std::max(r.gn_ratio_max, ratio);
      r.gn_ratio_min = std::min(r.gn_ratio_min, ratio);
    }
  }
  if (!std::isfinite(r.gn_ratio_min)) r.gn_ratio_min = 0.0;
  r.gn_constant = gn_constant > 0.0 ? gn_constant : r.gn_ratio_max;
  const double cb = 2.0 / ((k + 1.0) * (k + 2.0)) * r.gn_constant;
  r.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& row : diag.rows) {
    const double x = row.h1 * row.h1;
    const double m = r.constant + cb * mass0 * std::pow(x, 0.5 * k) - x;
    r.margins.push_back(m);
    if (m < r.min_margin) {
      r.min_margin = m;
      r.min_margin_time = row.t;
    }
  }
  return r;
}

}  // namespace gzk
