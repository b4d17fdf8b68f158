#include "etk/cfkernel.hpp"

#include <cmath>
#include <string>

#include "etk/constants.hpp"

namespace etk {

namespace {

using C = std::complex<double>;

std::string cstr(const C& v) {
  return "(" + std::to_string(v.real()) + ", " + std::to_string(v.imag()) +
         ")";
}

bool same_s(const C& a, const C& b) {
  const double scale = std::max(1.0, std::max(std::abs(a), std::abs(b)));
  return std::abs(a - b) <= 1e-9 * scale;
}

// Per-element convergence test: relative unless both magnitudes sit below the
// absolute floor.
bool element_close(const C& cur, const C& prev, double rel_tol) {
  constexpr double floor = 1e-14;
  const double diff = std::abs(cur - prev);
  const double ref = std::abs(prev);
  if (ref < floor && std::abs(cur) < floor) {
    return diff < floor;
  }
  return diff <= rel_tol * ref;
}

}  // namespace

GreenElements green_from_kernel(C s_arg, const KernelElements& kern,
                                const EtSystem& sys) {
  if (s_arg == 0.0) {
    throw ArgumentError("green_from_kernel: s_arg must be nonzero");
  }
  if (!same_s(kern.s_arg, s_arg)) {
    throw LevelMismatchError("green_from_kernel: kernel produced at s=" +
                             cstr(kern.s_arg) + " but evaluated at s=" +
                             cstr(s_arg));
  }

  const C i(0.0, 1.0);
  const double vh = sys.v / hbar;
  const C alpha = s_arg + i * ((sys.e0 + sys.lambda) / hbar) + kern.x;
  const C beta = vh * (2.0 * vh + i * kern.z) / s_arg;

  const C ab = alpha + beta;
  const C by = beta - kern.y;
  const double d = std::norm(ab) - std::norm(by);
  if (std::abs(d) < 1e-300) {
    throw SingularGreenError(kern.level,
                             "green_from_kernel: singular denominator at level " +
                                 std::to_string(kern.level));
  }

  GreenElements g;
  g.X = std::conj(ab) / d;
  g.Y = by / d;
  g.Z = -(1.0 / s_arg) *
        ((kern.z - i * vh) * g.X + (std::conj(kern.z) + i * vh) * g.Y);
  g.level = kern.level;
  g.s_arg = s_arg;

  // 2x2-inversion identity; the residual is pure rounding, which grows with
  // the cancellation ratio of the denominator, so the tolerance scales.
  const C unit = ab * g.X - std::conj(by) * g.Y;
  const double cond = (std::norm(ab) + std::norm(by)) / std::abs(d);
  const double tol = std::max(1e-12, 200.0 * 2.22e-16 * cond);
  if (std::abs(unit - 1.0) > tol) {
    throw SingularGreenError(kern.level,
                             "green_from_kernel: resolvent identity violated "
                             "at level " + std::to_string(kern.level));
  }
  return g;
}

KernelElements descend(const GreenElements& green_up, int n,
                       const EtSystem& sys) {
  if (green_up.level != n + 1) {
    throw LevelMismatchError(
        "descend: need resolvent at level " + std::to_string(n + 1) +
        ", got level " + std::to_string(green_up.level));
  }
  const C e = eta(sys);
  const double m = static_cast<double>(n + 1);

  KernelElements kern;
  kern.x = e * m * green_up.X;
  kern.y = -std::conj(e) * m * green_up.Y;
  kern.z = (e - std::conj(e)) * m * green_up.Z;
  kern.level = n;
  kern.s_arg = green_up.s_arg - sys.gamma();
  return kern;
}

KernelElements kernel_at(C s, int depth, const EtSystem& sys) {
  if (depth < 0) {
    throw ArgumentError("kernel_at: depth must be >= 0");
  }
  const double g = sys.gamma();

  KernelElements kern;
  kern.level = depth + 1;
  kern.s_arg = s + static_cast<double>(depth + 1) * g;

  for (int n = depth + 1; n >= 1; --n) {
    const GreenElements green = green_from_kernel(kern.s_arg, kern, sys);
    kern = descend(green, n - 1, sys);
    // Re-derive the level argument from source values; the subtraction in
    // descend drifts over thousands of levels.
    kern.s_arg = s + static_cast<double>(n - 1) * g;
  }
  return kern;
}

ConvergedKernel kernel_converged(C s, const EtSystem& sys, double rel_tol,
                                 int n_max) {
  if (rel_tol <= 0.0) {
    throw ArgumentError("kernel_converged: rel_tol must be > 0");
  }
  if (n_max < 8) {
    throw ArgumentError("kernel_converged: n_max must be >= 8");
  }

  KernelElements prev = kernel_at(s, 4, sys);
  for (int n = 8; n <= n_max; n *= 2) {
    const KernelElements cur = kernel_at(s, n, sys);
    if (element_close(cur.x, prev.x, rel_tol) &&
        element_close(cur.y, prev.y, rel_tol) &&
        element_close(cur.z, prev.z, rel_tol)) {
      return ConvergedKernel{cur, n};
    }
    if (2 * n > n_max) {
      throw ConvergenceError(cur, prev, n,
                             "kernel_converged: no convergence up to depth " +
                                 std::to_string(n));
    }
    prev = cur;
  }
  throw ConvergenceError(prev, prev, 4,
                         "kernel_converged: n_max below first doubling");
}

}  // namespace etk
