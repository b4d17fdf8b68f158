#include "etk/rates.hpp"

#include <cmath>
#include <string>

#include "etk/constants.hpp"
#include "etk/errors.hpp"

namespace etk {

namespace {
using C = std::complex<double>;
}

RatePair rate_resolutions(double s, const KernelElements& kern,
                          const EtSystem& sys) {
  if (s < 0.0) {
    throw ArgumentError("rate_resolutions: s must be >= 0");
  }
  if (kern.level != 0) {
    throw LevelMismatchError("rate_resolutions: need a level-0 kernel, got level " +
                             std::to_string(kern.level));
  }
  const double s_scale = std::max(1.0, std::abs(s));
  if (std::abs(kern.s_arg - s) > 1e-9 * s_scale) {
    throw LevelMismatchError(
        "rate_resolutions: kernel resolved at a different Laplace point");
  }

  const C i(0.0, 1.0);
  const C alpha = s + i * ((sys.e0 + sys.lambda) / hbar) + kern.x;
  const double denom = std::norm(alpha) - std::norm(kern.y);
  if (std::abs(denom) < 1e-300) {
    throw SingularDenominatorError(
        "rate_resolutions: |alpha|^2 - |y|^2 vanished");
  }

  const C ay = alpha + kern.y;
  const double v2 = sys.v * sys.v;

  RatePair rp;
  rp.forward = (2.0 * v2 / (hbar * hbar)) * ay.real() / denom;
  rp.backward = ((ay * (2.0 * v2 - 2.0 * i * hbar * sys.v * std::conj(kern.z)))
                     .real()) /
                (hbar * hbar * denom);
  rp.s_arg = s;
  rp.n_used = 0;
  rp.validity = semiclassical_validity(sys).valid;
  return rp;
}

RatePair rate_constants(const EtSystem& sys, double rel_tol, int n_max) {
  const ConvergedKernel ck = kernel_converged(0.0, sys, rel_tol, n_max);
  RatePair rp = rate_resolutions(0.0, ck.kernel, sys);
  rp.n_used = ck.n_used;
  return rp;
}

Mat2 assemble_K(double s, const KernelElements& kern, const EtSystem& sys) {
  if (kern.level != 0) {
    throw LevelMismatchError("assemble_K: need a level-0 kernel, got level " +
                             std::to_string(kern.level));
  }
  const C i(0.0, 1.0);
  const C ivh = i * (sys.v / hbar);
  const C ie = i * ((sys.e0 + sys.lambda) / hbar);

  const Mat2 t_pc{-ivh, ivh, ivh, -ivh};
  const Mat2 t_cp = t_pc + Mat2{0.0, std::conj(kern.z), 0.0, kern.z};
  const Mat2 t_cc{-ie + std::conj(kern.x), std::conj(kern.y),
                  kern.y, ie + kern.x};

  const Mat2 shifted{s + t_cc.a00, t_cc.a01, t_cc.a10, s + t_cc.a11};
  return t_pc * shifted.inverse() * t_cp;
}

double marcus_rate(const EtSystem& sys) {
  if (sys.lambda <= 0.0) {
    throw ParameterError("lambda", "marcus_rate requires lambda > 0");
  }
  const double kt = kb * sys.temperature;
  const double act = (sys.e0 + sys.lambda) * (sys.e0 + sys.lambda) /
                     (4.0 * sys.lambda * kt);
  return (sys.v * sys.v / hbar) * std::sqrt(M_PI / (sys.lambda * kt)) *
         std::exp(-act);
}

}  // namespace etk
