#include "etk/system.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "etk/constants.hpp"
#include "etk/errors.hpp"

namespace etk {

EtSystem make_system(double e0, double lambda, double v, double temperature,
                     double tau_l) {
  if (!std::isfinite(e0)) {
    throw ParameterError("e0", "must be finite");
  }
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw ParameterError("lambda", "must be >= 0");
  }
  if (!std::isfinite(v) || v < 0.0) {
    throw ParameterError("v", "must be >= 0");
  }
  if (!std::isfinite(temperature) || temperature <= 0.0) {
    throw ParameterError("temperature", "must be > 0");
  }
  if (!std::isfinite(tau_l) || tau_l <= 0.0) {
    throw ParameterError("tau_l", "must be > 0");
  }
  return EtSystem{e0, lambda, v, temperature, tau_l};
}

std::complex<double> eta(const EtSystem& sys) {
  const std::complex<double> num(2.0 * kb * sys.temperature,
                                 -hbar * sys.gamma());
  const std::complex<double> result = sys.lambda * num / (hbar * hbar);
  assert(sys.lambda == 0.0 || (result.real() > 0.0 && result.imag() < 0.0));
  return result;
}

Validity semiclassical_validity(const EtSystem& sys) {
  const double scale = std::sqrt(sys.v * sys.v + 0.25 * sys.e0 * sys.e0);
  double ratio;
  if (scale == 0.0) {
    ratio = std::numeric_limits<double>::infinity();
  } else {
    ratio = kb * sys.temperature / scale;
  }
  return Validity{ratio >= 1.0, ratio};
}

}  // namespace etk
