#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "etk/constants.hpp"
#include "etk/errors.hpp"
#include "etk/system.hpp"
#include "etk/thermo.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const etk::EtSystem ref = etk::make_system(-3.0, 3.0, 1.0, 298.0, 1.0);
}

TEST_CASE("reaction free energy on the reference system", "[thermo]") {
  CHECK_THAT(etk::gibbs(ref), WithinRel(-3.0458558752374985, 1e-9));
}

TEST_CASE("entropy and enthalpy on the reference system", "[thermo]") {
  const etk::ThermoResult tr = etk::entropy_enthalpy(ref);
  CHECK_THAT(tr.dg, WithinRel(-3.0458558752374985, 1e-9));
  CHECK_THAT(tr.ds, WithinRel(-3.342169944460238e-4, 1e-6));
  CHECK_THAT(tr.dh, WithinRel(-3.1454525395824136, 1e-9));
  CHECK(tr.temperature_step == 1.0);
  CHECK(tr.validity);
  // dh = dg + T ds holds by construction.
  CHECK_THAT(tr.dh - (tr.dg + 298.0 * tr.ds), WithinAbs(0.0, 1e-12));
}

TEST_CASE("free energy vanishes at zero driving force", "[thermo]") {
  const etk::EtSystem sym = etk::make_system(0.0, 3.0, 1.0, 298.0, 1.0);
  const etk::ThermoResult tr = etk::entropy_enthalpy(sym);
  CHECK_THAT(tr.dg, WithinAbs(0.0, 1e-6));
  CHECK_THAT(tr.ds, WithinAbs(0.0, 1e-6));
  CHECK_THAT(tr.dh, WithinAbs(0.0, 1e-6));
}

TEST_CASE("free energy is antisymmetric in the driving force", "[thermo]") {
  for (double tau : {0.01, 10.0}) {
    for (double e0 : {1.0, 3.0}) {
      const double gp =
          etk::gibbs(etk::make_system(e0, 3.0, 1.0, 298.0, tau));
      const double gm =
          etk::gibbs(etk::make_system(-e0, 3.0, 1.0, 298.0, tau));
      CHECK_THAT(gp + gm, WithinAbs(0.0, 1e-6));
    }
  }
}

TEST_CASE("entropy is robust to the finite-difference step", "[thermo]") {
  const etk::ThermoResult fine = etk::entropy_enthalpy(ref, 0.5);
  const etk::ThermoResult coarse = etk::entropy_enthalpy(ref, 2.0);
  CHECK_THAT(fine.ds, WithinRel(coarse.ds, 0.01));
}

TEST_CASE("entropy_enthalpy validates its temperature step", "[thermo]") {
  CHECK_THROWS_AS(etk::entropy_enthalpy(ref, 0.0), etk::ParameterError);
  CHECK_THROWS_AS(etk::entropy_enthalpy(ref, -1.0), etk::ParameterError);
  CHECK_THROWS_AS(etk::entropy_enthalpy(ref, 298.0), etk::ParameterError);
}

TEST_CASE("free energy is undefined when a rate is nonpositive", "[thermo]") {
  const etk::EtSystem cold = etk::make_system(-3.0, 3.0, 1.0, 50.0, 1.0);
  try {
    etk::gibbs(cold);
    FAIL("expected NonpositiveRateError");
  } catch (const etk::NonpositiveRateError& e) {
    CHECK(e.forward > 0.0);
    CHECK(e.backward < 0.0);
  }
}

TEST_CASE("adiabaticity parameter value and scaling", "[thermo]") {
  const etk::EtSystem sys = etk::make_system(-3.0, 3.0, 1.0, 298.0, 10.0);
  CHECK_THAT(etk::kappa(sys), WithinRel(0.0016471236930736606, 1e-13));

  etk::EtSystem twice = sys;
  twice.tau_l = 20.0;
  CHECK(etk::kappa(twice) == 0.5 * etk::kappa(sys));

  // kappa = 1 at tau_l = hbar / sqrt(2 k_B T lambda), about 16.5 fs here.
  const double tau_star = etk::hbar / std::sqrt(2.0 * etk::kb * 298.0 * 3.0);
  CHECK_THAT(tau_star, WithinRel(0.0165, 0.01));
  etk::EtSystem star = sys;
  star.tau_l = tau_star;
  CHECK_THAT(etk::kappa(star), WithinAbs(1.0, 1e-12));
}
