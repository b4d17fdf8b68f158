#ifndef ETK_THERMO_HPP
#define ETK_THERMO_HPP

#include "etk/system.hpp"

namespace etk {

struct ThermoResult {
  double dg = 0.0;                // reaction free energy, kJ/mol
  double ds = 0.0;                // reaction entropy, kJ/(mol K)
  double dh = 0.0;                // reaction enthalpy, kJ/mol; dh = dg + T ds
  double temperature_step = 0.0;  // finite-difference step used for ds (K)
  bool validity = false;
};

// Reaction free energy from detailed balance of the converged rates:
//   dG = -k_B T ln(k / k').
// Throws NonpositiveRateError if either rate is <= 0.
double gibbs(const EtSystem& sys, double rel_tol = 1e-10);

// Entropy by central difference of gibbs over T +/- delta_t, enthalpy from
// dh = dg + T ds.  Requires delta_t > 0 and temperature - delta_t > 0.
ThermoResult entropy_enthalpy(const EtSystem& sys, double delta_t = 1.0,
                              double rel_tol = 1e-10);

// Solvent adiabaticity parameter kappa = hbar / (tau_l sqrt(2 k_B T lambda)).
double kappa(const EtSystem& sys);

}  // namespace etk

#endif
