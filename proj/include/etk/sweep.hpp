#ifndef ETK_SWEEP_HPP
#define ETK_SWEEP_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "etk/heom.hpp"
#include "etk/system.hpp"

namespace etk {

enum class Axis { tau_l, e0, lambda, v, temperature, s };

Axis axis_from_name(const std::string& name);   // throws ArgumentError
std::string axis_name(Axis axis);

struct GridSpec {
  Axis axis = Axis::tau_l;
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
  bool log = false;   // log10-spaced endpoints inclusive
};

// Inclusive linear or log10 spacing; count >= 2 (ArgumentError otherwise).
std::vector<double> grid_values(const GridSpec& spec);

// Base system with one axis overridden (Axis::s leaves the system untouched).
EtSystem with_axis(const EtSystem& base, Axis axis, double value);

struct SweepRow {
  std::string axis_label;
  EtSystem sys{};
  double s = 0.0;
  double k_fwd = 0.0;
  double k_bwd = 0.0;
  std::optional<double> dg, ds, dh;   // filled in thermo mode only
  double kappa_v = 0.0;
  int n_used = 0;
  bool validity = false;
};

struct SweepOptions {
  double rel_tol = 1e-10;
  int n_max = 4096;
  double delta_t = 1.0;    // temperature step for the thermo derivatives
  int threads = 0;         // 0 = auto (hardware), capped by ETK_THREADS
  bool thermo = false;
};

struct SweepPoint {
  std::string axis_label;
  EtSystem sys{};
  double s = 0.0;
};

// 1-D grid over one axis at fixed s (or over s itself).
std::vector<SweepPoint> make_points(const EtSystem& base, double s_fixed,
                                    const GridSpec& grid);

// 2-D grid, outer-major row order; labels "outer:inner".
std::vector<SweepPoint> make_points_2d(const EtSystem& base, double s_fixed,
                                       const GridSpec& outer,
                                       const GridSpec& inner);

// Evaluates every point (worker pool, deterministic output order).  On the
// first failing point (smallest index) rethrows with the grid point named.
std::vector<SweepRow> run_sweep(const std::vector<SweepPoint>& points,
                                const SweepOptions& opt);

// Worker count actually used: requested (or hardware) capped by ETK_THREADS.
int thread_count(int requested);

std::string csv_header();
void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);

// Companion gnuplot script next to the CSV.
void write_gnuplot(const std::string& script_path, const std::string& csv_path,
                   const std::string& x_column, bool log_x, bool thermo);

// Population dump: header t_ps,p_a,p_b,trace_err.
void write_trace_csv(std::ostream& os, const PopulationTrace& trace);

// 17-significant-digit scientific formatting used for every CSV double.
std::string format_double(double value);

}  // namespace etk

#endif
