#ifndef ETK_SYSTEM_HPP
#define ETK_SYSTEM_HPP

#include <complex>

namespace etk {

// Two-state electron-transfer system coupled to a Debye solvent.
//
// e0          driving force E0 (kJ/mol); the donor-acceptor gap is E0 + lambda
// lambda      solvent reorganization energy (kJ/mol), >= 0
// v           electronic coupling V (kJ/mol), >= 0
// temperature T (K), > 0
// tau_l       longitudinal solvent relaxation time (ps), > 0
struct EtSystem {
  double e0;
  double lambda;
  double v;
  double temperature;
  double tau_l;

  // Solvent relaxation rate gamma = 1/tau_l (ps^-1).
  double gamma() const { return 1.0 / tau_l; }
};

struct Validity {
  bool valid;
  double ratio;   // k_B T / sqrt(V^2 + E0^2/4); valid iff ratio >= 1
};

// Validates and constructs a system; throws ParameterError naming the bad field.
EtSystem make_system(double e0, double lambda, double v, double temperature,
                     double tau_l);

// Solvent fluctuation strength eta = lambda (2 k_B T - i hbar gamma) / hbar^2
// (ps^-2).  Re(eta) > 0 and Im(eta) < 0 whenever lambda > 0.
std::complex<double> eta(const EtSystem& sys);

// High-temperature applicability check for the semiclassical solvent treatment.
Validity semiclassical_validity(const EtSystem& sys);

}  // namespace etk

#endif
