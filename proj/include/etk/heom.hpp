#ifndef ETK_HEOM_HPP
#define ETK_HEOM_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "etk/system.hpp"

namespace etk {

// Stack of 2x2 density matrices rho_0 .. rho_depth, each stored row-major
// (aa, ab, ba, bb).  Level 0 is the physical density matrix.  Levels n >= 1
// hold the auxiliaries in the scaled representation
//   rho~_n = rho_n / (sqrt(n!) c^n),  c = sqrt(|eta|)  (c = 1 when eta = 0),
// a constant diagonal similarity that keeps every level's magnitude O(1);
// unscaled auxiliaries overflow double precision beyond depth ~120 at typical
// solvent couplings.  Level-0 observables are unaffected.
struct HierarchyState {
  std::vector<std::array<std::complex<double>, 4>> matrices;
  double time = 0.0;
  int depth = 0;   // matrices.size() == depth + 1
};

// Sampled populations from a propagation run.  trace_err holds |tr rho_0 - 1|
// per sample; trace_error_max is its maximum.
struct PopulationTrace {
  std::vector<double> times;
  std::vector<double> p_a;
  std::vector<double> p_b;
  std::vector<double> trace_err;
  double trace_error_max = 0.0;
  double t_end = 0.0;
  double dt = 0.0;
};

struct RateFit {
  double k_fit = 0.0;        // forward rate from the tail fit, ps^-1
  double k_bwd_fit = 0.0;    // backward rate, ps^-1
  double p_a_inf = 0.0;      // fitted equilibrium donor population
  double r_squared = 0.0;
  int n_window = 0;          // samples inside the fit window
};

// Fresh donor-state initial condition |a><a| at the given depth.
HierarchyState initial_state(int depth);

// Time derivative of the (scaled) hierarchy stack:
//   d rho~_n/dt = -(i/hbar)[H, rho~_n] - n gamma rho~_n
//                 - i c sqrt(n+1) [P_b, rho~_{n+1}]
//                 - i (sqrt(n)/c) (a1 [P_b, rho~_{n-1}] - i a2 {P_b, rho~_{n-1}})
// with H = [[0, V], [V, E0+lambda]], P_b = diag(0, 1),
// a1 = Re(eta), a2 = -Im(eta), and plain truncation rho~_{depth+1} = 0.
// The level-0 trace of the derivative is exactly 0.
HierarchyState hierarchy_derivative(const HierarchyState& state,
                                    const EtSystem& sys);

// Largest integrator step the fixed-step RK4 scheme accepts:
//   min(tau_l, hbar / max(|V|, |E0+lambda|, k_B T)) / 20.
double max_stable_dt(const EtSystem& sys);

// Default propagation horizon: 20 / (marcus_rate + gamma), the golden-rule
// guess of the slowest relevant timescale.
double default_t_end(const EtSystem& sys);

// Hard ceiling on RK4 steps per run.
inline constexpr long long step_limit = 100000000;

// Fixed-step RK4 propagation from the donor state, sampling about n_samples
// population points (the final one exactly at the last step).  Preconditions:
// 0 < dt <= max_stable_dt, step count within step_limit (StepLimitError).
// Throws StabilityError as soon as a sampled trace error exceeds 1e-6.
PopulationTrace propagate(const EtSystem& sys, int depth, double t_end,
                          double dt, int n_samples = 8001);

// Single-exponential tail fit of the donor population:
// p_a_inf = tail average over t >= 0.9 t_end; linear regression of
// ln|p_a - p_a_inf| over samples with residual in [resid_lo, resid_hi];
// total rate = -slope, split forward/backward by (1 - p_a_inf) : p_a_inf.
// Throws NotEquilibratedError when |p_a(t_end) - p_a(0.9 t_end)| >= 1e-6,
// PoorFitError when R^2 < r2_min or the window is degenerate.
RateFit fit_rates(const PopulationTrace& trace, double resid_lo = 1e-5,
                  double resid_hi = 1e-1, double r2_min = 0.999);

}  // namespace etk

#endif
