#include "etk/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <thread>

#include "etk/errors.hpp"
#include "etk/rates.hpp"
#include "etk/thermo.hpp"

namespace etk {

Axis axis_from_name(const std::string& name) {
  if (name == "tau_l") return Axis::tau_l;
  if (name == "e0") return Axis::e0;
  if (name == "lambda") return Axis::lambda;
  if (name == "v") return Axis::v;
  if (name == "temperature" || name == "temp") return Axis::temperature;
  if (name == "s") return Axis::s;
  throw ArgumentError("unknown axis '" + name +
                      "' (expected tau_l, e0, lambda, v, temperature, s)");
}

std::string axis_name(Axis axis) {
  switch (axis) {
    case Axis::tau_l: return "tau_l";
    case Axis::e0: return "e0";
    case Axis::lambda: return "lambda";
    case Axis::v: return "v";
    case Axis::temperature: return "temperature";
    case Axis::s: return "s";
  }
  return "?";
}

std::vector<double> grid_values(const GridSpec& spec) {
  if (spec.count < 2) {
    throw ArgumentError("grid for axis " + axis_name(spec.axis) +
                        " needs at least 2 points");
  }
  if (spec.log && (spec.lo <= 0.0 || spec.hi <= 0.0)) {
    throw ArgumentError("log grid for axis " + axis_name(spec.axis) +
                        " needs positive endpoints");
  }
  std::vector<double> vals(spec.count);
  if (spec.log) {
    const double llo = std::log10(spec.lo);
    const double lhi = std::log10(spec.hi);
    for (int i = 0; i < spec.count; ++i) {
      vals[i] = std::pow(10.0, llo + (lhi - llo) * i / (spec.count - 1));
    }
  } else {
    for (int i = 0; i < spec.count; ++i) {
      vals[i] = spec.lo + (spec.hi - spec.lo) * i / (spec.count - 1);
    }
  }
  return vals;
}

EtSystem with_axis(const EtSystem& base, Axis axis, double value) {
  switch (axis) {
    case Axis::tau_l:
      return make_system(base.e0, base.lambda, base.v, base.temperature, value);
    case Axis::e0:
      return make_system(value, base.lambda, base.v, base.temperature,
                         base.tau_l);
    case Axis::lambda:
      return make_system(base.e0, value, base.v, base.temperature, base.tau_l);
    case Axis::v:
      return make_system(base.e0, base.lambda, value, base.temperature,
                         base.tau_l);
    case Axis::temperature:
      return make_system(base.e0, base.lambda, base.v, value, base.tau_l);
    case Axis::s:
      return base;
  }
  return base;
}

std::vector<SweepPoint> make_points(const EtSystem& base, double s_fixed,
                                    const GridSpec& grid) {
  const std::string label = axis_name(grid.axis);
  std::vector<SweepPoint> pts;
  pts.reserve(grid.count);
  for (double v : grid_values(grid)) {
    SweepPoint p;
    p.axis_label = label;
    p.sys = with_axis(base, grid.axis, v);
    p.s = grid.axis == Axis::s ? v : s_fixed;
    pts.push_back(p);
  }
  return pts;
}

std::vector<SweepPoint> make_points_2d(const EtSystem& base, double s_fixed,
                                       const GridSpec& outer,
                                       const GridSpec& inner) {
  if (outer.axis == inner.axis) {
    throw ArgumentError("2-D sweep axes must differ");
  }
  const std::string label = axis_name(outer.axis) + ":" + axis_name(inner.axis);
  std::vector<SweepPoint> pts;
  pts.reserve(static_cast<std::size_t>(outer.count) * inner.count);
  for (double ov : grid_values(outer)) {
    const EtSystem mid = with_axis(base, outer.axis, ov);
    const double s_mid = outer.axis == Axis::s ? ov : s_fixed;
    for (double iv : grid_values(inner)) {
      SweepPoint p;
      p.axis_label = label;
      p.sys = with_axis(mid, inner.axis, iv);
      p.s = inner.axis == Axis::s ? iv : s_mid;
      pts.push_back(p);
    }
  }
  return pts;
}

int thread_count(int requested) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) {
    n = 1;
  }
  if (const char* env = std::getenv("ETK_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) {
      n = std::min(n, static_cast<int>(cap));
    }
  }
  return n;
}

namespace {

SweepRow evaluate_point(const SweepPoint& pt, const SweepOptions& opt) {
  SweepRow row;
  row.axis_label = pt.axis_label;
  row.sys = pt.sys;
  row.s = pt.s;
  row.kappa_v = kappa(pt.sys);

  if (pt.s != 0.0) {
    const ConvergedKernel ck =
        kernel_converged(pt.s, pt.sys, opt.rel_tol, opt.n_max);
    const RatePair rp = rate_resolutions(pt.s, ck.kernel, pt.sys);
    row.k_fwd = rp.forward;
    row.k_bwd = rp.backward;
    row.n_used = ck.n_used;
    row.validity = rp.validity;
  } else {
    const RatePair rp = rate_constants(pt.sys, opt.rel_tol, opt.n_max);
    row.k_fwd = rp.forward;
    row.k_bwd = rp.backward;
    row.n_used = rp.n_used;
    row.validity = rp.validity;
  }

  if (opt.thermo) {
    const ThermoResult tr =
        entropy_enthalpy(pt.sys, opt.delta_t, opt.rel_tol);
    row.dg = tr.dg;
    row.ds = tr.ds;
    row.dh = tr.dh;
  }
  return row;
}

std::string describe_point(const SweepPoint& pt, std::size_t index) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "row %zu (%s: tau_l=%g, e0=%g, lambda=%g, v=%g, temp=%g, s=%g)",
                index, pt.axis_label.c_str(), pt.sys.tau_l, pt.sys.e0,
                pt.sys.lambda, pt.sys.v, pt.sys.temperature, pt.s);
  return buf;
}

}  // namespace

std::vector<SweepRow> run_sweep(const std::vector<SweepPoint>& points,
                                const SweepOptions& opt) {
  const std::size_t total = points.size();
  std::vector<SweepRow> rows(total);
  std::vector<std::string> failures(total);

  const int workers =
      std::min<std::size_t>(thread_count(opt.threads), std::max<std::size_t>(total, 1));
  std::atomic<std::size_t> next{0};

  auto work = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) {
        return;
      }
      try {
        rows[i] = evaluate_point(points[i], opt);
      } catch (const Error& e) {
        failures[i] = std::string(e.what()) + " at " +
                      describe_point(points[i], i);
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back(work);
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  for (std::size_t i = 0; i < total; ++i) {
    if (!failures[i].empty()) {
      throw Error(failures[i]);
    }
  }
  return rows;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", value);
  return buf;
}

std::string csv_header() {
  return "axis_name,tau_l_ps,e0_kjmol,lambda_kjmol,v_kjmol,temp_k,s_psinv,"
         "k_fwd_psinv,k_bwd_psinv,dg_kjmol,ds_kjmol_per_k,dh_kjmol,kappa,"
         "n_used,validity";
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << csv_header() << "\n";
  for (const auto& r : rows) {
    os << r.axis_label << ',' << format_double(r.sys.tau_l) << ','
       << format_double(r.sys.e0) << ',' << format_double(r.sys.lambda) << ','
       << format_double(r.sys.v) << ',' << format_double(r.sys.temperature)
       << ',' << format_double(r.s) << ',' << format_double(r.k_fwd) << ','
       << format_double(r.k_bwd) << ','
       << (r.dg ? format_double(*r.dg) : std::string()) << ','
       << (r.ds ? format_double(*r.ds) : std::string()) << ','
       << (r.dh ? format_double(*r.dh) : std::string()) << ','
       << format_double(r.kappa_v) << ',' << r.n_used << ','
       << (r.validity ? 1 : 0) << "\n";
  }
}

void write_gnuplot(const std::string& script_path, const std::string& csv_path,
                   const std::string& x_column, bool log_x, bool thermo) {
  std::ofstream os(script_path);
  if (!os) {
    throw ArgumentError("cannot write gnuplot script to " + script_path);
  }
  int xcol = 2;
  if (x_column == "e0") xcol = 3;
  else if (x_column == "lambda") xcol = 4;
  else if (x_column == "v") xcol = 5;
  else if (x_column == "temperature") xcol = 6;
  else if (x_column == "s") xcol = 7;

  os << "set datafile separator ','\n";
  os << "set key autotitle columnhead\n";
  os << "set xlabel '" << x_column << "'\n";
  if (log_x) {
    os << "set logscale x\n";
  }
  if (thermo) {
    os << "set ylabel 'kJ/mol'\n";
    os << "plot '" << csv_path << "' using " << xcol
       << ":10 with linespoints title 'dG', \\\n     '" << csv_path
       << "' using " << xcol << ":12 with linespoints title 'dH'\n";
  } else {
    os << "set logscale y\n";
    os << "set ylabel 'rate / ps^-1'\n";
    os << "plot '" << csv_path << "' using " << xcol
       << ":8 with linespoints title 'k', \\\n     '" << csv_path
       << "' using " << xcol << ":9 with linespoints title 'k'''\n";
  }
}

void write_trace_csv(std::ostream& os, const PopulationTrace& trace) {
  os << "t_ps,p_a,p_b,trace_err\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    os << format_double(trace.times[i]) << ',' << format_double(trace.p_a[i])
       << ',' << format_double(trace.p_b[i]) << ','
       << format_double(trace.trace_err[i]) << "\n";
  }
}

}  // namespace etk
