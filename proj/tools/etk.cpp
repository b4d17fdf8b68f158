#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "etk/acceptance.hpp"
#include "etk/cfkernel.hpp"
#include "etk/errors.hpp"
#include "etk/heom.hpp"
#include "etk/sweep.hpp"
#include "etk/system.hpp"

namespace {

struct CommonOpts {
  double e0 = 0.0;
  double lambda = 3.0;
  double v = 1.0;
  double temp = 298.0;
  double tau_l = 1.0;
  double s = 0.0;
  double rel_tol = 1e-10;
  int n_max = 4096;
  int threads = 0;
  std::string out;
  std::string config;
  bool gnuplot = false;
};

struct GridOpts {
  std::string axis = "tau_l";
  std::string log_spec;
  std::string lin_spec;
};

// "lo:hi:count" -> GridSpec
etk::GridSpec parse_grid(const std::string& axis, const std::string& log_spec,
                         const std::string& lin_spec) {
  if (log_spec.empty() == lin_spec.empty()) {
    throw etk::ArgumentError("exactly one of --log/--lin is required");
  }
  const bool log = !log_spec.empty();
  const std::string& spec = log ? log_spec : lin_spec;

  etk::GridSpec g;
  g.axis = etk::axis_from_name(axis);
  g.log = log;
  char trail = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d%c", &g.lo, &g.hi, &g.count,
                  &trail) != 3) {
    throw etk::ArgumentError("malformed grid '" + spec +
                             "' (expected lo:hi:count)");
  }
  return g;
}

void add_system_flags(CLI::App* sub, CommonOpts& o) {
  const auto last = CLI::MultiOptionPolicy::TakeLast;
  sub->add_option("--e0", o.e0, "Driving force E0 (kJ/mol)")
      ->multi_option_policy(last);
  sub->add_option("--lambda", o.lambda, "Reorganization energy (kJ/mol)")
      ->multi_option_policy(last);
  sub->add_option("--v", o.v, "Electronic coupling V (kJ/mol)")
      ->multi_option_policy(last);
  sub->add_option("--temp", o.temp, "Temperature (K)")
      ->multi_option_policy(last);
  sub->add_option("--tau-l", o.tau_l, "Solvent relaxation time (ps)")
      ->multi_option_policy(last);
  sub->add_option("--config", o.config,
                  "Key=value file with defaults; explicit flags override")
      ->multi_option_policy(last);
}

void add_sweep_flags(CLI::App* sub, CommonOpts& o, GridOpts& g) {
  add_system_flags(sub, o);
  const auto last = CLI::MultiOptionPolicy::TakeLast;
  sub->add_option("--axis", g.axis,
                  "Swept axis: tau_l, e0, lambda, v, temperature, s")
      ->multi_option_policy(last);
  sub->add_option("--log", g.log_spec, "Log grid lo:hi:count")
      ->multi_option_policy(last);
  sub->add_option("--lin", g.lin_spec, "Linear grid lo:hi:count")
      ->multi_option_policy(last);
  sub->add_option("--s", o.s, "Laplace point for the rate resolutions (ps^-1)")
      ->multi_option_policy(last);
  sub->add_option("--rel-tol", o.rel_tol, "Kernel convergence tolerance")
      ->multi_option_policy(last);
  sub->add_option("--n-max", o.n_max, "Depth ceiling for the doubling search")
      ->multi_option_policy(last);
  sub->add_option("--threads", o.threads,
                  "Worker threads (0 = auto; ETK_THREADS caps)")
      ->multi_option_policy(last);
  auto* out = sub->add_option("--out", o.out, "Write CSV here (default stdout)")
                  ->multi_option_policy(last);
  sub->add_flag("--gnuplot", o.gnuplot, "Emit a companion gnuplot script")
      ->needs(out);
}

// Rewrites the raw arguments so that key=value lines from a --config file
// appear as flags directly after the subcommand name.  Flags the user typed
// come later on the line and therefore win.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);

  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) {
    return args;
  }

  std::ifstream is(path);
  if (!is) {
    throw etk::ArgumentError("cannot read config file " + path);
  }
  std::vector<std::string> injected;
  std::string line;
  auto trim = [](std::string t) {
    const char* ws = " \t\r";
    t.erase(0, t.find_first_not_of(ws));
    t.erase(t.find_last_not_of(ws) + 1);
    return t;
  };
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') {
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw etk::ArgumentError("config line is not key=value: " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") {
      throw etk::ArgumentError("bad config key in line: " + line);
    }
    injected.push_back("--" + key + "=" + value);
  }

  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!args[i].empty() && args[i][0] != '-') {
      args.insert(args.begin() + i + 1, injected.begin(), injected.end());
      break;
    }
  }
  return args;
}

void emit_rows(const CommonOpts& o, const etk::GridSpec& grid,
               const std::vector<etk::SweepRow>& rows, bool thermo) {
  if (o.out.empty()) {
    etk::write_csv(std::cout, rows);
  } else {
    std::ofstream os(o.out, std::ios::binary);
    if (!os) {
      throw etk::ArgumentError("cannot open --out file " + o.out);
    }
    etk::write_csv(os, rows);
    if (o.gnuplot) {
      etk::write_gnuplot(o.out + ".gp", o.out, etk::axis_name(grid.axis),
                         grid.log, thermo);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Nonperturbative electron-transfer rate constants and reaction\n"
      "thermodynamics for a two-state system in a Debye solvent."};
  app.require_subcommand(1);

  CommonOpts ro;
  GridOpts rg;
  CLI::App* rates = app.add_subcommand(
      "rates", "Sweep forward/backward rate constants over one axis");
  add_sweep_flags(rates, ro, rg);

  CommonOpts to;
  GridOpts tg;
  std::string axis2;
  std::string log2_spec, lin2_spec;
  double delta_t = 1.0;
  CLI::App* thermo = app.add_subcommand(
      "thermo", "Sweep reaction free energy, entropy and enthalpy");
  add_sweep_flags(thermo, to, tg);
  const auto last = CLI::MultiOptionPolicy::TakeLast;
  thermo->add_option("--axis2", axis2, "Optional outer family axis")
      ->multi_option_policy(last);
  thermo->add_option("--log2", log2_spec, "Outer log grid lo:hi:count")
      ->multi_option_policy(last);
  thermo->add_option("--lin2", lin2_spec, "Outer linear grid lo:hi:count")
      ->multi_option_policy(last);
  thermo->add_option("--delta-t", delta_t,
                     "Temperature step for the entropy derivative (K)")
      ->multi_option_policy(last);

  CommonOpts po;
  int depth = 0;
  double t_end = 0.0;
  double dt = 0.0;
  int samples = 2001;
  CLI::App* propagate = app.add_subcommand(
      "propagate", "Integrate the hierarchy and dump the population trace");
  add_system_flags(propagate, po);
  propagate->add_option("--depth", depth,
                        "Hierarchy depth (0 = pick from kernel convergence)")
      ->multi_option_policy(last);
  propagate->add_option("--t-end", t_end, "Horizon (ps; 0 = heuristic)")
      ->multi_option_policy(last);
  propagate->add_option("--dt", dt, "RK4 step (ps; 0 = stability bound)")
      ->multi_option_policy(last);
  propagate->add_option("--samples", samples, "Output samples")
      ->multi_option_policy(last);
  propagate->add_option("--out", po.out, "Write trace CSV here")
      ->multi_option_policy(last);

  std::string only;
  bool oracle = false;
  CLI::App* verify =
      app.add_subcommand("verify", "Run the built-in verification suite");
  verify->add_option("--only", only, "Run a single criterion by name");
  verify->add_flag("--oracle", oracle,
                   "Include the slow time-domain cross-validation");

  std::vector<std::string> args;
  try {
    args = expand_config(argc, argv);
  } catch (const etk::ArgumentError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (rates->parsed()) {
      const etk::GridSpec grid = parse_grid(rg.axis, rg.log_spec, rg.lin_spec);
      const etk::EtSystem base =
          etk::make_system(ro.e0, ro.lambda, ro.v, ro.temp, ro.tau_l);
      etk::SweepOptions opt;
      opt.rel_tol = ro.rel_tol;
      opt.n_max = ro.n_max;
      opt.threads = ro.threads;
      opt.thermo = false;
      const auto rows = etk::run_sweep(etk::make_points(base, ro.s, grid), opt);
      emit_rows(ro, grid, rows, false);
    } else if (thermo->parsed()) {
      const etk::GridSpec grid = parse_grid(tg.axis, tg.log_spec, tg.lin_spec);
      const etk::EtSystem base =
          etk::make_system(to.e0, to.lambda, to.v, to.temp, to.tau_l);
      etk::SweepOptions opt;
      opt.rel_tol = to.rel_tol;
      opt.n_max = to.n_max;
      opt.delta_t = delta_t;
      opt.threads = to.threads;
      opt.thermo = true;
      std::vector<etk::SweepPoint> pts;
      if (!axis2.empty()) {
        const etk::GridSpec outer = parse_grid(axis2, log2_spec, lin2_spec);
        pts = etk::make_points_2d(base, to.s, outer, grid);
      } else {
        pts = etk::make_points(base, to.s, grid);
      }
      const auto rows = etk::run_sweep(pts, opt);
      emit_rows(to, grid, rows, true);
    } else if (propagate->parsed()) {
      const etk::EtSystem sys =
          etk::make_system(po.e0, po.lambda, po.v, po.temp, po.tau_l);
      int d = depth;
      if (d <= 0) {
        d = etk::kernel_converged(0.0, sys, 1e-6).n_used;
      }
      const double te = t_end > 0.0 ? t_end : etk::default_t_end(sys);
      const double h = dt > 0.0 ? dt : etk::max_stable_dt(sys);
      const etk::PopulationTrace trace =
          etk::propagate(sys, d, te, h, samples);
      if (po.out.empty()) {
        etk::write_trace_csv(std::cout, trace);
      } else {
        std::ofstream os(po.out, std::ios::binary);
        if (!os) {
          throw etk::ArgumentError("cannot open --out file " + po.out);
        }
        etk::write_trace_csv(os, trace);
      }
    } else if (verify->parsed()) {
      const auto results = etk::run_acceptance(oracle, only);
      bool all_ok = true;
      for (const auto& r : results) {
        const char* tag = !r.ran ? "SKIP" : r.passed ? "PASS" : "FAIL";
        std::printf("[%s] %2d %-12s %s\n", tag, r.id, r.name.c_str(),
                    r.detail.c_str());
        all_ok = all_ok && (!r.ran || r.passed);
      }
      std::fflush(stdout);
      if (!all_ok) {
        return 1;
      }
    }
  } catch (const etk::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const etk::ArgumentError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const etk::Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
