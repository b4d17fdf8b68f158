#ifndef ETK_CFKERNEL_HPP
#define ETK_CFKERNEL_HPP

#include <complex>

#include "etk/errors.hpp"
#include "etk/system.hpp"

namespace etk {

// Memory-kernel elements (x, y, z) at one hierarchy level.  x and y are the
// diagonal self-energies of the coherence pair, z the population feed-through;
// all in ps^-1.  level and s_arg record where in the descent the elements were
// produced so that mismatched compositions fail loudly.
struct KernelElements {
  std::complex<double> x{0.0}, y{0.0}, z{0.0};
  int level = 0;
  std::complex<double> s_arg{0.0};
};

// Resolvent (Green-function) elements at one level: X, Y in ps, Z
// dimensionless.
struct GreenElements {
  std::complex<double> X{0.0}, Y{0.0}, Z{0.0};
  int level = 0;
  std::complex<double> s_arg{0.0};
};

struct ConvergedKernel {
  KernelElements kernel;   // level 0, at the requested s
  int n_used = 0;          // truncation depth at which doubling stabilized
};

// Doubling sequence failed to stabilize before n_max; carries the last two
// iterates for diagnostics.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const KernelElements& last, const KernelElements& prev,
                   int n_last, const std::string& msg)
      : Error(msg), last(last), prev(prev), n_last(n_last) {}
  KernelElements last;
  KernelElements prev;
  int n_last;
};

// Closed-form level resolvent from the kernel one level deeper.
//
// alpha = s_arg + i (E0 + lambda)/hbar + x,  beta = (V/hbar)(2 V/hbar + i z)/s_arg,
// D = |alpha+beta|^2 - |beta-y|^2   (real),
// X = conj(alpha+beta)/D,  Y = (beta-y)/D,
// Z = -(1/s_arg) [ (z - iV/hbar) X + (conj(z) + iV/hbar) Y ].
//
// Throws ArgumentError on s_arg == 0, LevelMismatchError if kern was produced
// at a different s_arg, SingularGreenError (with the level) if |D| < 1e-300.
// Self-checks the exact identity (alpha+beta) X - conj(beta-y) Y == 1.
GreenElements green_from_kernel(std::complex<double> s_arg,
                                const KernelElements& kern,
                                const EtSystem& sys);

// One inward step of the descent: kernel at level n from the resolvent at
// level n+1 (evaluated at s + gamma relative to the target):
//   x = eta (n+1) X,  y = -conj(eta) (n+1) Y,  z = (eta - conj(eta)) (n+1) Z.
KernelElements descend(const GreenElements& green_up, int n,
                       const EtSystem& sys);

// Level-0 kernel at Laplace variable s with the hierarchy truncated at depth
// N (levels above N carry zero kernel).  Works for complex s as long as the
// per-level resolvents stay regular.
KernelElements kernel_at(std::complex<double> s, int depth,
                         const EtSystem& sys);

// Depth-doubling driver: evaluates at N = 4, 8, 16, ... until every element
// changes by less than rel_tol between successive depths (elements below a
// 1e-14 ps^-1 floor are compared absolutely).  Throws ConvergenceError past
// n_max.
ConvergedKernel kernel_converged(std::complex<double> s, const EtSystem& sys,
                                 double rel_tol = 1e-10, int n_max = 4096);

}  // namespace etk

#endif
