#include "etk/acceptance.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>

#include "etk/constants.hpp"
#include "etk/errors.hpp"
#include "etk/heom.hpp"
#include "etk/rates.hpp"
#include "etk/sweep.hpp"
#include "etk/thermo.hpp"

namespace etk {

namespace {

std::string strf(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

EtSystem reference_system() { return make_system(-3.0, 3.0, 1.0, 298.0, 1.0); }

std::vector<double> log_grid(double lo, double hi, int count) {
  return grid_values(GridSpec{Axis::tau_l, lo, hi, count, true});
}

// 1. Location of the kappa = 1 crossover at lambda=3, T=298.
CriterionResult c_kappa() {
  CriterionResult r{1, "kappa", false, true, ""};
  const double tau_star = hbar / std::sqrt(2.0 * kb * 298.0 * 3.0);
  const EtSystem probe = make_system(-3.0, 3.0, 1.0, 298.0, tau_star);
  const double self = kappa(probe);
  const double dev = std::abs(tau_star / 0.0165 - 1.0);
  r.passed = dev <= 0.01 && std::abs(self - 1.0) <= 1e-12;
  r.detail = strf("tau_L(kappa=1) = %.6f ps vs 0.0165 ps (dev %.2f%%), "
                  "kappa(tau*) = %.15f",
                  tau_star, 100.0 * dev, self);
  return r;
}

// 2. Weak-coupling recovery of the classical golden-rule rate.
CriterionResult c_marcus() {
  CriterionResult r{2, "marcus", false, true, ""};
  double worst = 0.0, worst_e0 = 0.0;
  for (int i = 0; i < 21; ++i) {
    const double e0 = -6.0 + 6.0 * i / 20.0;
    const EtSystem sys = make_system(e0, 3.0, 0.01, 298.0, 10.0);
    const double k = rate_constants(sys).forward;
    const double dev = std::abs(std::log(k) - std::log(marcus_rate(sys)));
    if (dev > worst) {
      worst = dev;
      worst_e0 = e0;
    }
  }
  r.passed = worst <= 0.05;
  r.detail = strf("max |ln k - ln k_M| = %.4f at e0 = %.2f (tol 0.05)", worst,
                  worst_e0);
  return r;
}

// 3. Solvent-controlled turnover of k(tau_L).
CriterionResult c_turnover() {
  CriterionResult r{3, "turnover", false, true, ""};
  const std::vector<double> taus = log_grid(1e-3, 100.0, 60);
  bool ok = true;
  std::string detail;
  for (double e0 : {-1.0, -3.0, -5.0, 0.0}) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
      const EtSystem sys = make_system(e0, 3.0, 1.0, 298.0, taus[i]);
      // At the slow-solvent end the depth-to-depth reproducibility of the
      // deep chain bottoms out near 1e-10, so the default tolerance cannot
      // be certified there; 1e-8 is far below anything the turnover shape
      // resolves.
      const double k = rate_constants(sys, 1e-8).forward;
      if (k > best) {
        best = k;
        arg = i;
      }
    }
    const bool interior = arg > 0 && arg + 1 < taus.size();
    const bool this_ok = e0 == 0.0 ? arg == 0 : interior;
    ok = ok && this_ok;
    detail += strf("e0=%g: argmax tau_L = %.3g ps%s; ", e0, taus[arg],
                   this_ok ? "" : " (WRONG POSITION)");
  }
  r.passed = ok;
  r.detail = detail + "(interior max for e0<0, edge max for e0=0)";
  return r;
}

// 4. Departure from the golden-rule parabola at strong coupling.
CriterionResult c_deviation() {
  CriterionResult r{4, "deviation", false, true, ""};
  double best_k = -1.0, best_e0 = 0.0, worst_dev = 0.0;
  for (int i = 0; i <= 24; ++i) {
    const double e0 = -6.0 + 0.25 * i;
    const EtSystem sys = make_system(e0, 3.0, 1.0, 298.0, 10.0);
    const double k = rate_constants(sys).forward;
    const double dev = std::abs(std::log(k) - std::log(marcus_rate(sys)));
    worst_dev = std::max(worst_dev, dev);
    if (k > best_k) {
      best_k = k;
      best_e0 = e0;
    }
  }
  const bool pos_ok = std::abs(best_e0 - (-2.4)) <= 0.5;
  const bool dev_ok = worst_dev > 0.15;
  r.passed = pos_ok && dev_ok;
  r.detail = strf("argmax_e0 k = %.2f (want -2.4 +/- 0.5), max |ln k - ln "
                  "k_M| = %.3f (want > 0.15)",
                  best_e0, worst_dev);
  return r;
}

// 5. Detailed-balance symmetry of the reaction free energy.
CriterionResult c_symmetry() {
  CriterionResult r{5, "symmetry", false, true, ""};
  double worst = 0.0;
  for (double tau : {0.01, 0.1, 1.0, 10.0}) {
    const double g0 = gibbs(make_system(0.0, 3.0, 1.0, 298.0, tau));
    worst = std::max(worst, std::abs(g0));
    for (double e0 : {1.0, 3.0}) {
      const double gp = gibbs(make_system(e0, 3.0, 1.0, 298.0, tau));
      const double gm = gibbs(make_system(-e0, 3.0, 1.0, 298.0, tau));
      worst = std::max(worst, std::abs(gp + gm));
    }
  }
  r.passed = worst <= 1e-6;
  r.detail = strf("max |dG(0)| and |dG(+e0)+dG(-e0)| = %.2e kJ/mol (tol 1e-6)",
                  worst);
  return r;
}

// 6. Sign and magnitude ordering of dG, dH along the tau_L slice.
CriterionResult c_ordering() {
  CriterionResult r{6, "ordering", false, true, ""};
  bool ok = true;
  double min_gap_hg = 1e300, min_gap_ge = 1e300;
  for (double tau : log_grid(1e-3, 100.0, 13)) {
    const EtSystem sys = make_system(-3.0, 3.0, 1.0, 298.0, tau);
    const ThermoResult tr = entropy_enthalpy(sys);
    const bool signs = tr.dg < 0.0 && tr.dh < 0.0;
    const bool order =
        std::abs(tr.dh) >= std::abs(tr.dg) && std::abs(tr.dg) >= 3.0;
    ok = ok && signs && order;
    min_gap_hg = std::min(min_gap_hg, std::abs(tr.dh) - std::abs(tr.dg));
    min_gap_ge = std::min(min_gap_ge, std::abs(tr.dg) - 3.0);
  }
  r.passed = ok;
  r.detail = strf("13-point tau_L slice at e0=-3: min(|dH|-|dG|) = %.3e, "
                  "min(|dG|-|e0|) = %.3e kJ/mol (both must be >= 0, signs "
                  "negative)",
                  min_gap_hg, min_gap_ge);
  return r;
}

// 7. dG plateaus at both tau_L extremes; |dG| extremum near kappa = 1.
CriterionResult c_extremum() {
  CriterionResult r{7, "extremum", false, true, ""};
  auto dg_at = [](double e0, double lam, double tau) {
    return gibbs(make_system(e0, lam, 1.0, 298.0, tau));
  };

  const double lo_a = dg_at(-3.0, 3.0, 1e-3);
  const double lo_b = dg_at(-3.0, 3.0, 2e-3);
  const double hi_a = dg_at(-3.0, 3.0, 50.0);
  const double hi_b = dg_at(-3.0, 3.0, 100.0);
  const double lo_change = std::abs(lo_b / lo_a - 1.0);
  const double hi_change = std::abs(hi_b / hi_a - 1.0);
  const bool plateau = lo_change <= 0.02 && hi_change <= 0.02;

  bool extremum_ok = true;
  std::string ext;
  const std::vector<double> taus = log_grid(1e-3, 100.0, 26);
  const struct { double e0, lam; } cases[] = {{-1.0, 3.0}, {-3.0, 5.0},
                                              {-3.0, 6.0}};
  for (const auto& cs : cases) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
      const double g = std::abs(dg_at(cs.e0, cs.lam, taus[i]));
      if (g > best) {
        best = g;
        arg = i;
      }
    }
    const double tau_k1 =
        hbar / std::sqrt(2.0 * kb * 298.0 * cs.lam);
    const double decades = std::abs(std::log10(taus[arg] / tau_k1));
    const bool interior = arg > 0 && arg + 1 < taus.size();
    extremum_ok = extremum_ok && interior && decades <= 1.0;
    ext += strf("(e0=%g,lam=%g): extremum at %.3g ps, %.2f decades from "
                "kappa=1; ",
                cs.e0, cs.lam, taus[arg], decades);
  }
  r.passed = plateau && extremum_ok;
  r.detail = strf("plateau changes %.3f%%/%.3f%% (tol 2%%); ", 100.0 * lo_change,
                  100.0 * hi_change) + ext;
  return r;
}

// 8. Closed-form rates match the assembled 2x2 rate matrix.
CriterionResult c_crossform() {
  CriterionResult r{8, "crossform", false, true, ""};
  std::mt19937 rng(20260823);
  std::uniform_real_distribution<double> u_e0(-6.0, 0.0);
  std::uniform_real_distribution<double> u_lam(0.5, 6.0);
  std::uniform_real_distribution<double> u_v(0.01, 2.0);
  std::uniform_real_distribution<double> u_t(150.0, 400.0);
  std::uniform_real_distribution<double> u_ltau(-3.0, 2.0);
  std::uniform_real_distribution<double> u_s(0.0, 5.0);

  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const EtSystem sys = make_system(u_e0(rng), u_lam(rng), u_v(rng), u_t(rng),
                                     std::pow(10.0, u_ltau(rng)));
    const double s = u_s(rng);
    const KernelElements kern = kernel_at(s, 32, sys);
    const RatePair rp = rate_resolutions(s, kern, sys);
    const Mat2 K = assemble_K(s, kern, sys);
    const double err_f = std::abs(-K.a00.real() - rp.forward) /
                         std::max(std::abs(rp.forward), 1e-300);
    const double err_b = std::abs(K.a01.real() - rp.backward) /
                         std::max(std::abs(rp.backward), 1e-300);
    worst = std::max({worst, err_f, err_b});
  }
  r.passed = worst <= 1e-10;
  r.detail = strf("max relative mismatch over 100 random draws = %.2e "
                  "(tol 1e-10)",
                  worst);
  return r;
}

// 9. Time-domain hierarchy propagation vs the Laplace-domain rates.
CriterionResult c_oracle() {
  CriterionResult r{9, "oracle", false, true, ""};
  struct Case {
    const char* tag;
    EtSystem sys;
    int depth;
    double dt_frac;   // fraction of the stability bound
    double t_end;
  };
  const Case cases[] = {
      {"strong", reference_system(), 128, 1.0, 40.0},
      {"weak", make_system(-3.0, 3.0, 0.01, 298.0, 10.0), 320, 0.5, 12000.0},
  };

  bool ok = true;
  std::string detail;
  for (const auto& cs : cases) {
    const RatePair rp = rate_constants(cs.sys);
    const double dt = max_stable_dt(cs.sys) * cs.dt_frac;
    const PopulationTrace trace =
        propagate(cs.sys, cs.depth, cs.t_end, dt, 8001);
    const RateFit fit = fit_rates(trace);
    const double err_f = std::abs(fit.k_fit / rp.forward - 1.0);
    const double err_b = std::abs(fit.k_bwd_fit / rp.backward - 1.0);
    const bool trace_ok = trace.trace_error_max < 1e-10;
    const bool this_ok = err_f <= 0.05 && err_b <= 0.05 && trace_ok;
    ok = ok && this_ok;
    detail += strf("%s: fit (%.6g, %.6g) vs k(0) (%.6g, %.6g) -> dev "
                   "(%.2f%%, %.2f%%), trace %.1e%s; ",
                   cs.tag, fit.k_fit, fit.k_bwd_fit, rp.forward, rp.backward,
                   100.0 * err_f, 100.0 * err_b, trace.trace_error_max,
                   this_ok ? "" : " [OUTSIDE 5%]");
  }
  r.passed = ok;
  r.detail = detail;
  return r;
}

// 10. Depth and step-size robustness of the two solvers.
CriterionResult c_convergence() {
  CriterionResult r{10, "convergence", false, true, ""};
  const EtSystem sys = reference_system();

  const RatePair rp = rate_constants(sys);
  const KernelElements k_n = kernel_at(0.0, rp.n_used, sys);
  const KernelElements k_2n = kernel_at(0.0, 2 * rp.n_used, sys);
  const double f_n = rate_resolutions(0.0, k_n, sys).forward;
  const double f_2n = rate_resolutions(0.0, k_2n, sys).forward;
  const double depth_dev = std::abs(f_2n / f_n - 1.0);

  const double t_end = 5.0;
  const double dt = t_end / 32768.0;
  const PopulationTrace a = propagate(sys, 96, t_end, dt, 2001);
  const PopulationTrace b = propagate(sys, 96, t_end, 0.5 * dt, 2001);
  const double step_dev = std::abs(a.p_a.back() - b.p_a.back());

  r.passed = depth_dev < 1e-8 && step_dev < 1e-8;
  r.detail = strf("k(0) depth %d->%d rel change %.2e (tol 1e-8); P_a(%g) "
                  "dt-halving change %.2e (tol 1e-8)",
                  rp.n_used, 2 * rp.n_used, depth_dev, t_end, step_dev);
  return r;
}

struct Entry {
  const char* name;
  CriterionResult (*fn)();
  bool oracle;
};

const Entry kEntries[] = {
    {"kappa", c_kappa, false},       {"marcus", c_marcus, false},
    {"turnover", c_turnover, false}, {"deviation", c_deviation, false},
    {"symmetry", c_symmetry, false}, {"ordering", c_ordering, false},
    {"extremum", c_extremum, false}, {"crossform", c_crossform, false},
    {"oracle", c_oracle, true},      {"convergence", c_convergence, false},
};

}  // namespace

std::vector<std::string> criterion_names() {
  std::vector<std::string> names;
  for (const auto& e : kEntries) {
    names.emplace_back(e.name);
  }
  return names;
}

std::vector<CriterionResult> run_acceptance(bool include_oracle,
                                            const std::string& only) {
  if (!only.empty()) {
    bool known = false;
    for (const auto& e : kEntries) {
      known = known || only == e.name;
    }
    if (!known) {
      throw ArgumentError("unknown criterion '" + only + "'");
    }
  }

  std::vector<CriterionResult> results;
  int id = 0;
  for (const auto& e : kEntries) {
    ++id;
    if (!only.empty() && only != e.name) {
      continue;
    }
    CriterionResult r;
    if (e.oracle && !include_oracle && only.empty()) {
      r = CriterionResult{id, e.name, true, false,
                          "skipped (enable with --oracle)"};
    } else {
      try {
        r = e.fn();
        r.id = id;
        r.name = e.name;
      } catch (const std::exception& ex) {
        r = CriterionResult{id, e.name, false, true,
                            std::string("error: ") + ex.what()};
      }
    }
    results.push_back(r);
  }
  return results;
}

}  // namespace etk
