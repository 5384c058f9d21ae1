#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "gzk/config.hpp"
#include "gzk/experiments.hpp"
#include "gzk/manifest.hpp"
#include "gzk/probes.hpp"
#include "gzk/snapshot.hpp"

namespace fs = std::filesystem;
using namespace gzk;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// "12.5", "8pi" or "0.5pi"
double parse_length(const std::string& text) {
  std::string s = text;
  double scale = 1.0;
  if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
    scale = std::numbers::pi;
    s.resize(s.size() - 2);
    if (s.empty()) s = "1";
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !(v * scale > 0.0)) {
    throw UsageError("bad length '" + text + "': expected a positive number, optionally with a 'pi' suffix");
  }
  return v * scale;
}

GridSpec square_grid(std::size_t n, const std::string& box) {
  if (n < 8 || n % 2 != 0) throw UsageError("grid size must be even and >= 8");
  return make_square_grid(n, parse_length(box));
}

std::string fmt(double v) { return detail::format_real(v); }

void print_verdict(const ExperimentVerdict& v) {
  std::printf("experiment %s: %s\n", v.experiment.c_str(), to_string(v.status()));
  for (const auto& [k, x] : v.numbers) std::printf("  %-40s %.10g\n", k.c_str(), x);
  for (const auto& [k, ok] : v.checks) std::printf("  [%s] %s\n", ok ? "pass" : "FAIL", k.c_str());
  for (const auto& [k, s] : v.labels) std::printf("  %s: %s\n", k.c_str(), s.c_str());
}

struct Run {
  std::string command;
  fs::path out;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  std::string verdict = "report-only";
  int status = exit_ok;
};

// Options of the selected subcommand, with defaults, as text.
std::map<std::string, std::string> resolved_options(const CLI::App* app) {
  std::map<std::string, std::string> out;
  for (const CLI::Option* o : app->get_options()) {
    if (o->get_name() == "--help" || o->get_name().empty()) continue;
    std::string name = o->get_name();
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    if (o->count() > 0) {
      std::string joined;
      for (const auto& r : o->results()) joined += (joined.empty() ? "" : ",") + r;
      out[name] = joined;
    } else {
      out[name] = o->get_default_str();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

struct GroundStateArgs {
  int k = 2;
  double c = 1.0;
  std::size_t n = 256;
  std::string box = "32pi";
  double tol = 1e-10;
  int max_iter = 2000;
};

void run_ground_state(const GroundStateArgs& a, Run& run) {
  const auto g = solve_ground_state(a.k, a.c, square_grid(a.n, a.box), a.tol, a.max_iter);
  const auto prefix = (run.out / "ground_state").string();
  write_ground_state(prefix, g);
  run.outputs = {prefix + ".gzk", prefix + ".meta"};
  std::printf("ground state k=%d c=%g: residual %.3e, mass %.12g, iterations %d\n", g.k, g.c, g.residual, g.mass,
              g.iterations);
  if (g.k == 2 && g.c == 1.0) std::printf("critical mass %.12g\n", std::sqrt(g.mass));
}

struct EvolveArgs {
  std::string config;
  std::string datum = "random";
  double amplitude = 1.0;
  double width = 1.0;
  double speed = 1.0;
  long band = 8;
  std::uint64_t seed = 1;
  std::string input;
};

Field make_datum(const EvolveArgs& a, const SimulationConfig& c) {
  if (a.datum == "random") {
    Field f = band_limited_random_field(c.grid, a.seed, a.band);
    return f * (a.amplitude / sup_norm(f));
  }
  if (a.datum == "gaussian") {
    const double w = a.width, amp = a.amplitude;
    return Field::from_function(c.grid, [w, amp](double x, double y) { return amp * std::exp(-(x * x + y * y) / (w * w)); });
  }
  if (a.datum == "soliton") return solve_ground_state(c.k, a.speed, c.grid).profile;
  if (a.datum == "snapshot") {
    if (a.input.empty()) throw UsageError("--datum snapshot needs --input");
    const auto s = read_snapshot(a.input);
    if (!(s.field.grid() == c.grid)) throw UsageError("snapshot grid differs from the config grid");
    return as_physical(s.field);
  }
  throw UsageError("unknown datum '" + a.datum + "'");
}

void run_evolve(const EvolveArgs& a, Run& run) {
  const auto cfg = parse_config(a.config);
  const Field u0 = make_datum(a, cfg);
  run.seed = a.seed;
  const fs::path snaps = run.out / "snapshots";
  fs::create_directories(snaps);
  {
    const auto p = (run.out / "config.cfg").string();
    std::ofstream(p) << serialize_config(cfg);
    run.outputs.push_back(p);
  }
  std::size_t frame = 0;
  auto observer = [&](double t, const Field& u) {
    char name[32];
    std::snprintf(name, sizeof name, "snap_%06zu.gzk", frame++);
    const auto p = (snaps / name).string();
    write_snapshot(p, u, t);
    run.outputs.push_back(p);
  };
  const auto out = evolve(u0, cfg, observer);
  const auto diag = (run.out / "diagnostics.csv").string();
  out.diagnostics.write_csv(diag);
  run.outputs.push_back(diag);
  std::printf("evolve: t = %.6g after %zu steps, max relative I1 drift %.3e, max I2 drift %.3e\n", out.final_time,
              out.steps, out.diagnostics.max_relative_i1_drift(), out.diagnostics.max_i2_drift());
  if (out.blew_up) {
    std::printf("blow-up signal: sup norm above %g after t = %.6g\n", cfg.blowup_threshold, out.last_finite_time);
  }
}

struct ProbeArgs {
  std::vector<std::string> kinds = {"smoothing"};
  std::size_t n = 128;
  std::string box = "2pi";
  ProbeParams p;
};

void run_probe(const ProbeArgs& a, Run& run) {
  const auto g = square_grid(a.n, a.box);
  std::vector<ProbeResult> results;
  for (const auto& k : a.kinds) {
    ProbeParams p = a.p;
    p.kind = parse_probe_kind(k);
    results.push_back(estimate_probe(g, p));
    std::printf("probe %s: max %.10g, mean %.10g over %zu samples\n", probe_name(p.kind), results.back().max,
                results.back().mean, results.back().samples.size());
  }
  const auto path = (run.out / "probe.csv").string();
  write_probe_csv(path, results);
  run.outputs.push_back(path);
  run.seed = a.p.seed;
}

struct NormsArgs {
  std::string input;
  std::vector<double> s = {0.0, 0.5, 1.0};
  int k = 2;
};

void run_norms(const NormsArgs& a, Run& run) {
  if (a.k < 1) throw UsageError("--k must be >= 1");
  const auto snap = read_snapshot(a.input);
  const Field u = as_physical(snap.field);
  std::vector<std::pair<std::string, double>> rows;
  rows.emplace_back("time", snap.time);
  rows.emplace_back("L2", l2_norm(u));
  rows.emplace_back("Linf", sup_norm(u));
  for (double s : a.s) {
    rows.emplace_back("H^" + fmt(s), sobolev_norm(u, s, false));
    rows.emplace_back("Hdot^" + fmt(s), sobolev_norm(u, s, true));
  }
  const double g = gradient_norm(u);
  const double power = std::pow(lp_norm(u, a.k + 2.0), a.k + 2.0);
  double signed_power = 0.0;
  for (const auto& z : u.data()) signed_power += std::pow(z.real(), a.k + 2);
  signed_power *= u.grid().cell_area();
  rows.emplace_back("I1", std::pow(l2_norm(u), 2));
  rows.emplace_back("I2", g * g - 2.0 / ((a.k + 1.0) * (a.k + 2.0)) * signed_power);
  rows.emplace_back("L^(k+2)_power", power);
  const auto path = (run.out / "norms.csv").string();
  std::ofstream out(path);
  out << "name,value\n";
  for (const auto& [name, v] : rows) {
    out << name << "," << fmt(v) << "\n";
    std::printf("%-16s %.17g\n", name.c_str(), v);
  }
  run.outputs.push_back(path);
}

void finish_experiment(const ExperimentVerdict& v, Run& run) {
  print_verdict(v);
  const auto paths = v.write(run.out);
  run.outputs.insert(run.outputs.end(), paths.begin(), paths.end());
  run.verdict = to_string(v.status());
  if (v.status() == VerdictStatus::fail) run.status = exit_failed;
}

struct ScalingArgs {
  int k = 2;
  std::size_t n = 128;
  std::string box = "8pi";
  std::uint64_t seed = 3;
  long band = 10;
  double amplitude = 1.0;
  double t = 0.5;
  double dt = 1e-3;
};

struct IllposedArgs {
  IllposedParams p;
  std::size_t n = 512, source_n = 256;
  std::string box = "8pi", source_box = "16pi";
};

struct CriticalMassArgs {
  CriticalMassParams p;
  std::string profile = "ground-state";
  std::size_t n = 256;
  std::string box = "16pi";
};

struct HighLowArgs {
  HighLowParams p;
  std::size_t n = 512;
  std::string box = "2pi";
  std::string accumulation = "stage-consistent";
  int demo_iterations = 0;
  double demo_cutoff = 8.0;
};

struct SmallDataArgs {
  SmallDataParams p;
  std::size_t n = 256;
  std::string box = "16pi";
};

int dispatch(std::vector<std::string> args);

int rerun(const std::string& manifest, const std::string& out) {
  const auto m = RunManifest::read(manifest);
  std::vector<std::string> args(m.argv.begin() + (m.argv.empty() ? 0 : 1), m.argv.end());
  bool replaced = false;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--out") {
      args[i + 1] = out;
      replaced = true;
    }
  }
  if (!replaced) {
    args.push_back("--out");
    args.push_back(out);
  }
  return dispatch(args);
}

int dispatch(std::vector<std::string> args) {
  CLI::App app{"gZK numerical toolkit: solver, ground states, probes and experiments", "gzk"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", version_string);
  app.failure_message(CLI::FailureMessage::help);

  std::string out_dir;

  GroundStateArgs gs;
  auto* c_gs = app.add_subcommand("ground-state", "Solve for a solitary-wave profile");
  c_gs->add_option("--k", gs.k, "Nonlinearity power")->check(CLI::PositiveNumber);
  c_gs->add_option("--c", gs.c, "Wave speed")->check(CLI::PositiveNumber);
  c_gs->add_option("--n", gs.n, "Grid points per side");
  c_gs->add_option("--box", gs.box, "Box side length, e.g. 100.53 or 32pi");
  c_gs->add_option("--tol", gs.tol, "Iteration tolerance")->check(CLI::PositiveNumber);
  c_gs->add_option("--max-iter", gs.max_iter, "Iteration cap")->check(CLI::PositiveNumber);

  EvolveArgs ev;
  auto* c_ev = app.add_subcommand("evolve", "Integrate the equation from a datum");
  c_ev->add_option("--config", ev.config, "Run configuration file")->required()->check(CLI::ExistingFile);
  c_ev->add_option("--datum", ev.datum, "random | gaussian | soliton | snapshot")
      ->check(CLI::IsMember({"random", "gaussian", "soliton", "snapshot"}));
  c_ev->add_option("--amplitude", ev.amplitude, "Peak value of random or Gaussian data");
  c_ev->add_option("--width", ev.width, "Gaussian width")->check(CLI::PositiveNumber);
  c_ev->add_option("--speed", ev.speed, "Soliton speed")->check(CLI::PositiveNumber);
  c_ev->add_option("--band", ev.band, "Random data wavenumber band")->check(CLI::PositiveNumber);
  c_ev->add_option("--seed", ev.seed, "Random data seed");
  c_ev->add_option("--input", ev.input, "Snapshot file for --datum snapshot");

  ProbeArgs pr;
  auto* c_pr = app.add_subcommand("probe", "Estimate linear-estimate ratios over a random ensemble");
  c_pr->add_option("--kind", pr.kinds, "smoothing, strichartz, maximal_L4, maximal_L2 (repeatable)")
      ->delimiter(',')
      ->check(CLI::IsMember({"smoothing", "strichartz", "maximal_L4", "maximal_L2", "maximal_l4", "maximal_l2"}));
  c_pr->add_option("--n", pr.n, "Grid points per side");
  c_pr->add_option("--box", pr.box, "Box side length");
  c_pr->add_option("--T", pr.p.T, "Time horizon in (0, 1]");
  c_pr->add_option("--count", pr.p.count, "Ensemble size");
  c_pr->add_option("--seed", pr.p.seed, "First sample seed");
  c_pr->add_option("--band", pr.p.band, "Ensemble wavenumber band");
  c_pr->add_option("--theta", pr.p.theta, "Strichartz theta");
  c_pr->add_option("--epsilon", pr.p.epsilon, "Strichartz epsilon");
  c_pr->add_option("--s1", pr.p.s1, "maximal_L4 x-regularity");
  c_pr->add_option("--r1", pr.p.r1, "maximal_L4 y-regularity");
  c_pr->add_option("--s", pr.p.s, "maximal_L2 regularity");
  c_pr->add_option("--time-samples", pr.p.time_samples, "Time samples on [0, T]");

  NormsArgs nm;
  auto* c_nm = app.add_subcommand("norms", "Norms and conserved quantities of a snapshot");
  c_nm->add_option("--input", nm.input, "Snapshot file")->required()->check(CLI::ExistingFile);
  c_nm->add_option("--s", nm.s, "Sobolev indices")->delimiter(',');
  c_nm->add_option("--k", nm.k, "Nonlinearity power for I2");

  auto* c_ex = app.add_subcommand("experiment", "Run one experiment and write its verdict");
  c_ex->require_subcommand(1);

  ScalingArgs sc;
  auto* e_sc = c_ex->add_subcommand("scaling", "Scaling symmetry, static and dynamic");
  e_sc->add_option("--k", sc.k, "Nonlinearity power")->check(CLI::PositiveNumber);
  e_sc->add_option("--n", sc.n, "Grid points per side");
  e_sc->add_option("--box", sc.box, "Box side length");
  e_sc->add_option("--seed", sc.seed, "Datum seed");
  e_sc->add_option("--band", sc.band, "Datum band");
  e_sc->add_option("--amplitude", sc.amplitude, "Datum peak value");
  e_sc->add_option("--t", sc.t, "Final time");
  e_sc->add_option("--dt", sc.dt, "Time step");

  IllposedArgs ip;
  auto* e_ip = c_ex->add_subcommand("illposed", "Separation of nearby solitons in the critical norm");
  e_ip->add_option("--k", ip.p.k, "Nonlinearity power");
  e_ip->add_option("--m", ip.p.m_list, "Speed parameters m (c1 = m + 1, c2 = m)")->delimiter(',');
  e_ip->add_option("--t", ip.p.t, "Time");
  e_ip->add_option("--n", ip.n, "Grid points per side");
  e_ip->add_option("--box", ip.box, "Box side length");
  e_ip->add_option("--source-n", ip.source_n, "Grid of the c = 1 solve");
  e_ip->add_option("--source-box", ip.source_box, "Box of the c = 1 solve");

  CriticalMassArgs cm;
  auto* e_cm = c_ex->add_subcommand("critical-mass", "Evolution around the critical mass");
  e_cm->add_option("--factor", cm.p.factor, "Mass as a multiple of the critical mass");
  e_cm->add_option("--profile", cm.profile, "ground-state | gaussian")->check(CLI::IsMember({"ground-state", "gaussian"}));
  e_cm->add_option("--T", cm.p.T, "Time horizon");
  e_cm->add_option("--n", cm.n, "Grid points per side");
  e_cm->add_option("--box", cm.box, "Box side length");
  e_cm->add_option("--width", cm.p.gaussian_width, "Gaussian width");
  e_cm->add_option("--dt", cm.p.dt, "Largest time step");
  e_cm->add_option("--cfl", cm.p.cfl, "CFL number");
  e_cm->add_option("--cap", cm.p.amplification_cap, "Stop once the gradient grows by this factor");

  HighLowArgs hl;
  auto* e_hl = c_ex->add_subcommand("highlow", "One step of the high/low frequency method");
  e_hl->add_option("--s", hl.p.s, "Datum regularity in (53/63, 1)");
  e_hl->add_option("--N", hl.p.cutoffs, "Cutoffs")->delimiter(',');
  e_hl->add_option("--n", hl.n, "Grid points per side");
  e_hl->add_option("--box", hl.box, "Box side length");
  e_hl->add_option("--mass-factor", hl.p.mass_factor, "Datum mass as a fraction of the critical mass");
  e_hl->add_option("--seed", hl.p.seed, "Datum seed");
  e_hl->add_option("--T0", hl.p.T0, "Step time at N = 1");
  e_hl->add_option("--dt", hl.p.dt, "Largest time step");
  e_hl->add_option("--cfl", hl.p.cfl, "CFL number");
  e_hl->add_option("--accumulation", hl.accumulation, "stage-consistent | trapezoid")
      ->check(CLI::IsMember({"stage-consistent", "trapezoid"}));
  e_hl->add_option("--demo-iterations", hl.demo_iterations, "Also run this many repeated steps (0 to 10)")
      ->check(CLI::Range(0, 10));
  e_hl->add_option("--demo-N", hl.demo_cutoff, "Cutoff for the repeated steps");

  SmallDataArgs sd;
  auto* e_sd = c_ex->add_subcommand("small-data", "Small-data persistence with the energy bootstrap");
  e_sd->add_option("--k", sd.p.k, "Nonlinearity power (>= 3)");
  e_sd->add_option("--h1", sd.p.h1, "Datum H1 norm");
  e_sd->add_option("--T", sd.p.T, "Time horizon");
  e_sd->add_option("--n", sd.n, "Grid points per side");
  e_sd->add_option("--box", sd.box, "Box side length");
  e_sd->add_option("--seed", sd.p.seed, "Datum seed");
  e_sd->add_option("--band", sd.p.band, "Datum band");
  e_sd->add_option("--dt", sd.p.dt, "Time step");

  std::string manifest_in;
  auto* c_rr = app.add_subcommand("rerun", "Repeat the run recorded in a manifest");
  c_rr->add_option("--manifest", manifest_in, "manifest.json of an earlier run")->required()->check(CLI::ExistingFile);

  for (auto* sub : {c_gs, c_ev, c_pr, c_nm, e_sc, e_ip, e_cm, e_hl, e_sd, c_rr}) {
    sub->add_option("--out", out_dir, "Run directory (created)");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  CLI::App* leaf = app.get_subcommands().front();
  if (leaf == c_ex) leaf = c_ex->get_subcommands().front();
  Run run;
  run.command = leaf == c_ex ? "experiment" : leaf->get_name();
  if (leaf->get_parent() == c_ex) run.command = "experiment " + leaf->get_name();
  if (out_dir.empty()) out_dir = "gzk-" + leaf->get_name();
  if (leaf == c_rr) return rerun(manifest_in, out_dir);

  run.out = out_dir;
  RunManifest m;
  m.command = run.command;
  m.argv = {"gzk"};
  m.argv.insert(m.argv.end(), args.begin(), args.end());
  m.config = resolved_options(leaf);
  m.started = utc_timestamp();

  try {
    fs::create_directories(run.out);
    if (leaf == c_gs) {
      run_ground_state(gs, run);
    } else if (leaf == c_ev) {
      run_evolve(ev, run);
    } else if (leaf == c_pr) {
      run_probe(pr, run);
    } else if (leaf == c_nm) {
      run_norms(nm, run);
    } else if (leaf == e_sc) {
      const auto g = square_grid(sc.n, sc.box);
      Field u0 = band_limited_random_field(g, sc.seed, sc.band);
      u0 *= sc.amplitude / sup_norm(u0);
      run.seed = sc.seed;
      finish_experiment(scaling_experiment(sc.k, 2.0, u0, sc.t, sc.dt), run);
    } else if (leaf == e_ip) {
      ip.p.grid = square_grid(ip.n, ip.box);
      ip.p.source_grid = square_grid(ip.source_n, ip.source_box);
      finish_experiment(illposed_experiment(ip.p), run);
    } else if (leaf == e_cm) {
      cm.p.profile = cm.profile == "gaussian" ? MassProfile::gaussian : MassProfile::ground_state;
      cm.p.grid = square_grid(cm.n, cm.box);
      finish_experiment(critical_mass_experiment(cm.p), run);
    } else if (leaf == e_hl) {
      hl.p.grid = square_grid(hl.n, hl.box);
      hl.p.accumulation =
          hl.accumulation == "trapezoid" ? DuhamelAccumulation::trapezoid : DuhamelAccumulation::stage_consistent;
      run.seed = hl.p.seed;
      finish_experiment(highlow_iteration_step(hl.p), run);
      if (hl.demo_iterations > 0) {
        const auto demo = highlow_iteration_demo(hl.p, hl.demo_cutoff, hl.demo_iterations);
        print_verdict(demo);
        const auto paths = demo.write(run.out / "demo");
        run.outputs.insert(run.outputs.end(), paths.begin(), paths.end());
      }
    } else if (leaf == e_sd) {
      sd.p.grid = square_grid(sd.n, sd.box);
      run.seed = sd.p.seed;
      finish_experiment(small_data_experiment(sd.p), run);
    }
  } catch (const UsageError& e) {
    std::cerr << "gzk: " << e.what() << "\n" << leaf->help();
    return exit_usage;
  } catch (const PreconditionError& e) {
    std::cerr << "gzk: precondition failed: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "gzk: invalid input: " << e.what() << "\n";
    return exit_usage;
  } catch (const ConfigError& e) {
    std::cerr << "gzk: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "gzk: " << e.what() << "\n";
    run.status = exit_failed;
    run.verdict = "error";
  }

  m.seed = run.seed;
  m.finished = utc_timestamp();
  m.outputs = run.outputs;
  m.verdict = run.verdict;
  if (fs::exists(run.out)) m.write(run.out);
  return run.status;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return dispatch(args);
  } catch (const std::exception& e) {
    std::cerr << "gzk: " << e.what() << "\n";
    return exit_failed;
  }
}
