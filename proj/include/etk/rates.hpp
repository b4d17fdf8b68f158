#ifndef ETK_RATES_HPP
#define ETK_RATES_HPP

#include <complex>

#include "etk/cfkernel.hpp"
#include "etk/mat2.hpp"
#include "etk/system.hpp"

namespace etk {

struct RatePair {
  double forward = 0.0;    // k, ps^-1 (donor -> acceptor)
  double backward = 0.0;   // k', ps^-1 (acceptor -> donor)
  double s_arg = 0.0;      // real Laplace point the pair was resolved at
  int n_used = 0;          // truncation depth (0 when resolved from a fixed kernel)
  bool validity = false;   // semiclassical applicability flag
};

// Forward/backward rate resolutions from a level-0 kernel at real s >= 0:
//   alpha = s + i (E0 + lambda)/hbar + x,  denom = |alpha|^2 - |y|^2,
//   k  = (2 V^2 / hbar^2) Re(alpha + y) / denom,
//   k' = (1/hbar^2) Re[ (alpha + y) (2 V^2 - 2 i hbar V conj(z)) ] / denom.
// Both vanish identically at V = 0.  Throws SingularDenominatorError when
// |denom| < 1e-300, LevelMismatchError on level/s bookkeeping mismatch.
RatePair rate_resolutions(double s, const KernelElements& kern,
                          const EtSystem& sys);

// Converged rate constants at s = 0 (the integrated memory kernel):
// kernel_converged + rate_resolutions, with n_used recorded.
RatePair rate_constants(const EtSystem& sys, double rel_tol = 1e-10,
                        int n_max = 4096);

// Full 2x2 rate matrix K(s) = T_PC (s + T_CC)^-1 T_CP over the population
// pair, built from the same kernel elements:
//   T_PC = i (V/hbar) [[-1, 1], [1, -1]]
//   T_CP = T_PC + [[0, conj(z)], [0, z]]
//   T_CC = i ((E0+lambda)/hbar) diag(-1, 1) + [[conj(x), conj(y)], [y, x]]
// Satisfies -Re K_00 == forward and Re K_01 == backward, and conserves
// probability column-wise (columns of Re K sum to 0).
Mat2 assemble_K(double s, const KernelElements& kern, const EtSystem& sys);

// Classical nonadiabatic golden-rule rate
//   (V^2/hbar) sqrt(pi / (lambda k_B T)) exp(-(E0+lambda)^2 / (4 lambda k_B T)).
// Requires lambda > 0.
double marcus_rate(const EtSystem& sys);

}  // namespace etk

#endif
