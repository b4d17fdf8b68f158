#include "etk/heom.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "etk/constants.hpp"
#include "etk/errors.hpp"
#include "etk/rates.hpp"

namespace etk {

namespace {

using C = std::complex<double>;

struct Coeffs {
  double vh;    // V/hbar
  double dh;    // (E0+lambda)/hbar
  double g;     // gamma
  double a1;    // Re(eta)
  double a2;    // -Im(eta)
  double c;     // sqrt(|eta|), 1 when eta = 0
};

Coeffs coeffs(const EtSystem& sys) {
  const C e = eta(sys);
  const double mag = std::abs(e);
  return Coeffs{sys.v / hbar, (sys.e0 + sys.lambda) / hbar, sys.gamma(),
                e.real(), -e.imag(), mag > 0.0 ? std::sqrt(mag) : 1.0};
}

// Propagation workspace.  Every level stays Hermitian (real diagonal,
// conjugate off-diagonals), so a level is four doubles: populations r0, r3
// and the coherence a + i b.  Arrays are padded by one zeroed slot at each
// end so neighbor reads never branch; the padding coefficients are zero.
struct Stack {
  int depth;
  int stride;                 // padded level count
  std::vector<double> buf;    // r0 | r3 | a | b blocks, each padded

  explicit Stack(int n) : depth(n), stride(n + 3), buf(4 * (n + 3), 0.0) {}

  double* r0() { return buf.data() + 1; }
  double* r3() { return buf.data() + stride + 1; }
  double* ca() { return buf.data() + 2 * stride + 1; }
  double* cb() { return buf.data() + 3 * stride + 1; }
};

// d/dt of the scaled hierarchy, Hermitian representation.
void rhs(const Coeffs& k, int depth, const double* ng, const double* cu,
         const double* cd, Stack& in, Stack& out) {
  const double tv = 2.0 * k.vh;
  const double* r0 = in.r0();
  const double* r3 = in.r3();
  const double* ca = in.ca();
  const double* cb = in.cb();
  double* o0 = out.r0();
  double* o3 = out.r3();
  double* oa = out.ca();
  double* ob = out.cb();
  const double a1 = k.a1;
  const double a2 = k.a2;
  const double ta2 = 2.0 * a2;
  const double dh = k.dh;
  const double vh = k.vh;

  for (int n = 0; n <= depth; ++n) {
    o0[n] = -tv * cb[n] - ng[n] * r0[n];
    o3[n] = tv * cb[n] - ng[n] * r3[n] - ta2 * cd[n] * r3[n - 1];
    oa[n] = -dh * cb[n] - ng[n] * ca[n] - cu[n] * cb[n + 1] -
            cd[n] * (a1 * cb[n - 1] + a2 * ca[n - 1]);
    ob[n] = vh * (r0[n] - r3[n]) + dh * ca[n] - ng[n] * cb[n] +
            cu[n] * ca[n + 1] + cd[n] * (a1 * ca[n - 1] - a2 * cb[n - 1]);
  }
}

void axpy(const std::vector<double>& y, double h, const std::vector<double>& k,
          std::vector<double>& out) {
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = y[i] + h * k[i];
  }
}

}  // namespace

HierarchyState initial_state(int depth) {
  if (depth < 0) {
    throw ParameterError("depth", "must be >= 0");
  }
  HierarchyState st;
  st.depth = depth;
  st.matrices.assign(static_cast<std::size_t>(depth) + 1,
                     {C(0.0), C(0.0), C(0.0), C(0.0)});
  st.matrices[0][0] = 1.0;
  return st;
}

HierarchyState hierarchy_derivative(const HierarchyState& state,
                                    const EtSystem& sys) {
  const int depth = state.depth;
  if (depth < 0 ||
      state.matrices.size() != static_cast<std::size_t>(depth) + 1) {
    throw LevelMismatchError("hierarchy_derivative: stack size != depth + 1");
  }
  const Coeffs k = coeffs(sys);
  const C i(0.0, 1.0);

  HierarchyState out;
  out.depth = depth;
  out.time = state.time;
  out.matrices.assign(state.matrices.size(), {C(0.0), C(0.0), C(0.0), C(0.0)});

  for (int n = 0; n <= depth; ++n) {
    const auto& m = state.matrices[n];
    auto& o = out.matrices[n];
    const double ng = n * k.g;

    // -(i/hbar)[H, m] with H = [[0, V], [V, E0+lambda]].
    o[0] = -i * (k.vh * (m[2] - m[1])) - ng * m[0];
    o[1] = -i * (k.vh * (m[3] - m[0]) - k.dh * m[1]) - ng * m[1];
    o[2] = -i * (k.vh * (m[0] - m[3]) + k.dh * m[2]) - ng * m[2];
    o[3] = -i * (k.vh * (m[1] - m[2])) - ng * m[3];

    if (n < depth) {
      const auto& u = state.matrices[n + 1];
      const C f = -i * (k.c * std::sqrt(n + 1.0));
      o[1] += f * (-u[1]);
      o[2] += f * u[2];
    }
    if (n > 0) {
      const auto& d = state.matrices[n - 1];
      const C f = -i * (std::sqrt(static_cast<double>(n)) / k.c);
      const C w1 = k.a1 * (-d[1]) - i * k.a2 * d[1];
      const C w2 = k.a1 * d[2] - i * k.a2 * d[2];
      const C w3 = -i * k.a2 * (2.0 * d[3]);
      o[1] += f * w1;
      o[2] += f * w2;
      o[3] += f * w3;
    }
  }
  return out;
}

double max_stable_dt(const EtSystem& sys) {
  const double escale =
      std::max({std::abs(sys.v), std::abs(sys.e0 + sys.lambda),
                kb * sys.temperature});
  return std::min(sys.tau_l, hbar / escale) / 20.0;
}

double default_t_end(const EtSystem& sys) {
  const double est = (sys.lambda > 0.0 && sys.v > 0.0) ? marcus_rate(sys) : 0.0;
  return 20.0 / (est + sys.gamma());
}

PopulationTrace propagate(const EtSystem& sys, int depth, double t_end,
                          double dt, int n_samples) {
  if (depth < 0) {
    throw ParameterError("depth", "must be >= 0");
  }
  if (!(t_end > 0.0)) {
    throw ParameterError("t_end", "must be > 0");
  }
  const double bound = max_stable_dt(sys);
  if (!(dt > 0.0) || dt > bound * (1.0 + 1e-12)) {
    throw ParameterError("dt", "must satisfy 0 < dt <= " +
                                   std::to_string(bound) + " ps");
  }
  if (n_samples < 2) {
    throw ParameterError("n_samples", "must be >= 2");
  }

  const double steps_exact = t_end / dt;
  if (steps_exact > static_cast<double>(step_limit) + 0.5) {
    const long long reported =
        static_cast<long long>(std::min(steps_exact, 9.0e18));
    throw StepLimitError(reported, step_limit,
                         "propagate: " + std::to_string(steps_exact) +
                             " steps exceed the limit of " +
                             std::to_string(step_limit));
  }
  const long long nst =
      std::max(1LL, static_cast<long long>(std::ceil(steps_exact - 1e-9)));

  const Coeffs k = coeffs(sys);
  const int stride = depth + 3;

  // Per-level couplings, zero on the padding slots.
  std::vector<double> ng(stride, 0.0), cu(stride, 0.0), cd(stride, 0.0);
  for (int n = 0; n <= depth; ++n) {
    ng[n + 1] = n * k.g;
    cu[n + 1] = n < depth ? k.c * std::sqrt(n + 1.0) : 0.0;
    cd[n + 1] = n > 0 ? std::sqrt(static_cast<double>(n)) / k.c : 0.0;
  }
  const double* ngp = ng.data() + 1;
  const double* cup = cu.data() + 1;
  const double* cdp = cd.data() + 1;

  Stack y(depth), tmp(depth), k1(depth), k2(depth), k3(depth), k4(depth);
  y.r0()[0] = 1.0;

  const long long stride_out =
      std::max(1LL, nst / static_cast<long long>(n_samples - 1));

  PopulationTrace trace;
  trace.t_end = nst * dt;
  trace.dt = dt;

  auto sample = [&](long long step) {
    const double pa = y.r0()[0];
    const double pb = y.r3()[0];
    const double err = std::abs(pa + pb - 1.0);
    const double t = step * dt;
    trace.times.push_back(t);
    trace.p_a.push_back(pa);
    trace.p_b.push_back(pb);
    trace.trace_err.push_back(err);
    if (!(err <= 1e-6)) {
      throw StabilityError(err, t,
                           "propagate: trace error " + std::to_string(err) +
                               " at t = " + std::to_string(t) + " ps");
    }
    trace.trace_error_max = std::max(trace.trace_error_max, err);
  };

  sample(0);
  const double h2 = 0.5 * dt;
  const double h6 = dt / 6.0;
  for (long long step = 1; step <= nst; ++step) {
    rhs(k, depth, ngp, cup, cdp, y, k1);
    axpy(y.buf, h2, k1.buf, tmp.buf);
    rhs(k, depth, ngp, cup, cdp, tmp, k2);
    axpy(y.buf, h2, k2.buf, tmp.buf);
    rhs(k, depth, ngp, cup, cdp, tmp, k3);
    axpy(y.buf, dt, k3.buf, tmp.buf);
    rhs(k, depth, ngp, cup, cdp, tmp, k4);
    const std::size_t len = y.buf.size();
    double* yb = y.buf.data();
    const double* b1 = k1.buf.data();
    const double* b2 = k2.buf.data();
    const double* b3 = k3.buf.data();
    const double* b4 = k4.buf.data();
    for (std::size_t i = 0; i < len; ++i) {
      yb[i] += h6 * (b1[i] + 2.0 * (b2[i] + b3[i]) + b4[i]);
    }
    if (step % stride_out == 0 || step == nst) {
      sample(step);
    }
  }
  return trace;
}

RateFit fit_rates(const PopulationTrace& trace, double resid_lo,
                  double resid_hi, double r2_min) {
  const std::size_t n = trace.times.size();
  if (n < 4 || trace.p_a.size() != n) {
    throw PoorFitError(0.0, "fit_rates: trace too short");
  }
  const double t_end = trace.times.back();
  const double t_tail = 0.9 * t_end;

  std::size_t tail_begin = n - 1;
  while (tail_begin > 0 && trace.times[tail_begin - 1] >= t_tail) {
    --tail_begin;
  }

  if (std::abs(trace.p_a.back() - trace.p_a[tail_begin]) >= 1e-6) {
    throw NotEquilibratedError(
        "fit_rates: population still drifting over the last 10% of the run");
  }

  double p_inf = 0.0;
  for (std::size_t i = tail_begin; i < n; ++i) {
    p_inf += trace.p_a[i];
  }
  p_inf /= static_cast<double>(n - tail_begin);

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  int m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = std::abs(trace.p_a[i] - p_inf);
    if (resid < resid_lo || resid > resid_hi) {
      continue;
    }
    const double x = trace.times[i];
    const double yv = std::log(resid);
    sx += x;
    sy += yv;
    sxx += x * x;
    sxy += x * yv;
    syy += yv * yv;
    ++m;
  }
  if (m < 3) {
    throw PoorFitError(0.0, "fit_rates: fewer than 3 samples in the residual "
                            "window [" + std::to_string(resid_lo) + ", " +
                            std::to_string(resid_hi) + "]");
  }

  const double dm = static_cast<double>(m);
  const double sxx_c = sxx - sx * sx / dm;
  const double sxy_c = sxy - sx * sy / dm;
  const double syy_c = syy - sy * sy / dm;
  if (sxx_c <= 0.0 || syy_c <= 0.0) {
    throw PoorFitError(0.0, "fit_rates: degenerate regression window");
  }
  const double slope = sxy_c / sxx_c;
  const double r2 = (sxy_c * sxy_c) / (sxx_c * syy_c);
  if (r2 < r2_min) {
    throw PoorFitError(r2, "fit_rates: R^2 = " + std::to_string(r2) +
                               " below " + std::to_string(r2_min));
  }
  const double k_total = -slope;
  if (k_total <= 0.0) {
    throw PoorFitError(r2, "fit_rates: nonpositive decay rate");
  }

  RateFit fit;
  fit.k_fit = (1.0 - p_inf) * k_total;
  fit.k_bwd_fit = p_inf * k_total;
  fit.p_a_inf = p_inf;
  fit.r_squared = r2;
  fit.n_window = m;
  return fit;
}

}  // namespace etk
