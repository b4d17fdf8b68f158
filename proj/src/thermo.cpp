#include "etk/thermo.hpp"

#include <cmath>
#include <string>

#include "etk/constants.hpp"
#include "etk/errors.hpp"
#include "etk/rates.hpp"

namespace etk {

double gibbs(const EtSystem& sys, double rel_tol) {
  const RatePair rp = rate_constants(sys, rel_tol);
  if (rp.forward <= 0.0 || rp.backward <= 0.0) {
    throw NonpositiveRateError(
        rp.forward, rp.backward,
        "gibbs: nonpositive rate (forward=" + std::to_string(rp.forward) +
            ", backward=" + std::to_string(rp.backward) + ")");
  }
  return -kb * sys.temperature * std::log(rp.forward / rp.backward);
}

ThermoResult entropy_enthalpy(const EtSystem& sys, double delta_t,
                              double rel_tol) {
  if (delta_t <= 0.0) {
    throw ParameterError("delta_t", "must be > 0");
  }
  if (sys.temperature - delta_t <= 0.0) {
    throw ParameterError("delta_t", "temperature - delta_t must stay > 0");
  }

  EtSystem up = sys;
  up.temperature = sys.temperature + delta_t;
  EtSystem down = sys;
  down.temperature = sys.temperature - delta_t;

  const double dg = gibbs(sys, rel_tol);
  const double dg_up = gibbs(up, rel_tol);
  const double dg_down = gibbs(down, rel_tol);

  ThermoResult tr;
  tr.dg = dg;
  tr.ds = -(dg_up - dg_down) / (2.0 * delta_t);
  tr.dh = dg + sys.temperature * tr.ds;
  tr.temperature_step = delta_t;
  tr.validity = semiclassical_validity(sys).valid;
  return tr;
}

double kappa(const EtSystem& sys) {
  return hbar / (sys.tau_l * std::sqrt(2.0 * kb * sys.temperature * sys.lambda));
}

}  // namespace etk
