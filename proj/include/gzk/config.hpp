#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "gzk/grid.hpp"
#include "gzk/solver.hpp"

namespace gzk {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_real(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  return out;
}

inline long parse_int(const std::string& key, const std::string& v) {
  long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
  return out;
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("config: '" + key + "' expects true or false, got '" + v + "'");
}

inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline const char* to_string(Integrator i) {
  switch (i) {
    case Integrator::if_rk4: return "if_rk4";
    case Integrator::etd_rk4: return "etd_rk4";
    case Integrator::strang: return "strang";
  }
  return "?";
}

inline const char* to_string(DtPolicy p) {
  switch (p) {
    case DtPolicy::fixed: return "fixed";
    case DtPolicy::cfl: return "cfl";
    case DtPolicy::heuristic: return "heuristic";
  }
  return "?";
}

inline const char* to_string(NonlinearForm f) { return f == NonlinearForm::conservative ? "conservative" : "direct"; }

/// Reads `key = value` lines. Blank lines and text after '#' are ignored.
/// Keys k, nx, ny, Lx, Ly, T and dt are required; unknown or repeated keys
/// are errors.
inline SimulationConfig parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
    if (!kv.emplace(key, value).second) throw ConfigError("config: duplicate key '" + key + "'");
  }

  static const std::set<std::string> known = {"k", "nx", "ny", "Lx", "Ly", "T", "dt", "dt_policy", "cfl",
                                              "heuristic_s", "heuristic_gamma", "integrator", "dealias", "form",
                                              "snapshot_stride", "diagnostic_stride", "blowup_threshold"};
  for (const auto& [key, value] : kv) {
    if (!known.count(key)) throw ConfigError("config: unknown key '" + key + "'");
  }
  for (const char* req : {"k", "nx", "ny", "Lx", "Ly", "T", "dt"}) {
    if (!kv.count(req)) throw ConfigError(std::string("config: missing required key '") + req + "'");
  }

  using detail::parse_bool;
  using detail::parse_int;
  using detail::parse_real;
  SimulationConfig c;
  c.k = static_cast<int>(parse_int("k", kv["k"]));
  const long nx = parse_int("nx", kv["nx"]);
  const long ny = parse_int("ny", kv["ny"]);
  if (nx <= 0 || ny <= 0) throw ConfigError("config: nx and ny must be positive");
  try {
    c.grid = make_grid(static_cast<std::size_t>(nx), static_cast<std::size_t>(ny), parse_real("Lx", kv["Lx"]),
                       parse_real("Ly", kv["Ly"]));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.t_end = parse_real("T", kv["T"]);
  c.dt = parse_real("dt", kv["dt"]);
  if (kv.count("dt_policy")) {
    const auto& v = kv["dt_policy"];
    if (v == "fixed") c.dt_policy = DtPolicy::fixed;
    else if (v == "cfl") c.dt_policy = DtPolicy::cfl;
    else if (v == "heuristic") c.dt_policy = DtPolicy::heuristic;
    else throw ConfigError("config: dt_policy must be fixed, cfl or heuristic");
  }
  if (kv.count("cfl")) c.cfl = parse_real("cfl", kv["cfl"]);
  if (kv.count("heuristic_s")) c.heuristic_s = parse_real("heuristic_s", kv["heuristic_s"]);
  if (kv.count("heuristic_gamma")) c.heuristic_gamma = parse_real("heuristic_gamma", kv["heuristic_gamma"]);
  if (kv.count("integrator")) {
    const auto& v = kv["integrator"];
    if (v == "if_rk4") c.integrator = Integrator::if_rk4;
    else if (v == "etd_rk4") c.integrator = Integrator::etd_rk4;
    else if (v == "strang") c.integrator = Integrator::strang;
    else throw ConfigError("config: integrator must be if_rk4, etd_rk4 or strang");
  }
  if (kv.count("dealias")) c.dealias = parse_bool("dealias", kv["dealias"]);
  if (kv.count("form")) {
    const auto& v = kv["form"];
    if (v == "conservative") c.form = NonlinearForm::conservative;
    else if (v == "direct") c.form = NonlinearForm::direct;
    else throw ConfigError("config: form must be conservative or direct");
  }
  auto stride = [&](const char* key, std::size_t& out) {
    if (!kv.count(key)) return;
    const long v = parse_int(key, kv[key]);
    if (v < 1) throw ConfigError(std::string("config: ") + key + " must be >= 1");
    out = static_cast<std::size_t>(v);
  };
  stride("snapshot_stride", c.snapshot_stride);
  stride("diagnostic_stride", c.diagnostic_stride);
  if (kv.count("blowup_threshold")) c.blowup_threshold = parse_real("blowup_threshold", kv["blowup_threshold"]);
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

inline SimulationConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

/// Every key, one per line, reals at full precision.
inline std::string serialize_config(const SimulationConfig& c) {
  using detail::format_real;
  std::ostringstream out;
  out << "k = " << c.k << "\n";
  out << "nx = " << c.grid.nx() << "\n";
  out << "ny = " << c.grid.ny() << "\n";
  out << "Lx = " << format_real(c.grid.lx()) << "\n";
  out << "Ly = " << format_real(c.grid.ly()) << "\n";
  out << "T = " << format_real(c.t_end) << "\n";
  out << "dt = " << format_real(c.dt) << "\n";
  out << "dt_policy = " << to_string(c.dt_policy) << "\n";
  out << "cfl = " << format_real(c.cfl) << "\n";
  out << "heuristic_s = " << format_real(c.heuristic_s) << "\n";
  out << "heuristic_gamma = " << format_real(c.heuristic_gamma) << "\n";
  out << "integrator = " << to_string(c.integrator) << "\n";
  out << "dealias = " << (c.dealias ? "true" : "false") << "\n";
  out << "form = " << to_string(c.form) << "\n";
  out << "snapshot_stride = " << c.snapshot_stride << "\n";
  out << "diagnostic_stride = " << c.diagnostic_stride << "\n";
  out << "blowup_threshold = " << format_real(c.blowup_threshold) << "\n";
  return out.str();
}

}  // namespace gzk
