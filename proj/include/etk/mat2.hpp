#ifndef ETK_MAT2_HPP
#define ETK_MAT2_HPP

#include <complex>

#include "etk/errors.hpp"

namespace etk {

// Dense complex 2x2 matrix, row-major.  Only what the rate algebra needs.
struct Mat2 {
  using C = std::complex<double>;
  C a00{0.0}, a01{0.0}, a10{0.0}, a11{0.0};

  Mat2 operator+(const Mat2& o) const {
    return {a00 + o.a00, a01 + o.a01, a10 + o.a10, a11 + o.a11};
  }
  Mat2 operator-(const Mat2& o) const {
    return {a00 - o.a00, a01 - o.a01, a10 - o.a10, a11 - o.a11};
  }
  Mat2 operator*(const Mat2& o) const {
    return {a00 * o.a00 + a01 * o.a10, a00 * o.a01 + a01 * o.a11,
            a10 * o.a00 + a11 * o.a10, a10 * o.a01 + a11 * o.a11};
  }
  friend Mat2 operator*(C s, const Mat2& m) {
    return {s * m.a00, s * m.a01, s * m.a10, s * m.a11};
  }

  C det() const { return a00 * a11 - a01 * a10; }

  Mat2 inverse() const {
    const C d = det();
    if (std::abs(d) < 1e-300) {
      throw SingularDenominatorError("2x2 inverse: |det| < 1e-300");
    }
    return {a11 / d, -a01 / d, -a10 / d, a00 / d};
  }

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

}  // namespace etk

#endif
