#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "etk/constants.hpp"
#include "etk/errors.hpp"
#include "etk/system.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double roundtrip(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return std::strtod(buf, nullptr);
}

}  // namespace

TEST_CASE("make_system accepts a physical parameter set", "[core]") {
  const etk::EtSystem sys = etk::make_system(-3.0, 3.0, 1.0, 298.0, 1.0);
  CHECK(sys.e0 == -3.0);
  CHECK(sys.lambda == 3.0);
  CHECK(sys.v == 1.0);
  CHECK(sys.temperature == 298.0);
  CHECK(sys.tau_l == 1.0);
  CHECK(sys.gamma() == 1.0);
}

TEST_CASE("make_system rejects unphysical parameters by field", "[core]") {
  try {
    etk::make_system(-3.0, -1.0, 1.0, 298.0, 1.0);
    FAIL("negative lambda accepted");
  } catch (const etk::ParameterError& e) {
    CHECK(e.field == "lambda");
  }
  try {
    etk::make_system(0.0, 3.0, -0.5, 298.0, 1.0);
    FAIL("negative v accepted");
  } catch (const etk::ParameterError& e) {
    CHECK(e.field == "v");
  }
  try {
    etk::make_system(0.0, 3.0, 1.0, 0.0, 1.0);
    FAIL("zero temperature accepted");
  } catch (const etk::ParameterError& e) {
    CHECK(e.field == "temperature");
  }
  try {
    etk::make_system(0.0, 3.0, 1.0, 298.0, 0.0);
    FAIL("zero tau_l accepted");
  } catch (const etk::ParameterError& e) {
    CHECK(e.field == "tau_l");
  }
  CHECK_THROWS_AS(etk::make_system(NAN, 3.0, 1.0, 298.0, 1.0),
                  etk::ParameterError);
}

TEST_CASE("make_system admits the lambda = 0 edge", "[core]") {
  const etk::EtSystem sys = etk::make_system(0.0, 0.0, 1.0, 298.0, 1.0);
  CHECK(sys.lambda == 0.0);
  CHECK(etk::eta(sys) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("eta reproduces the reference solvent strength", "[core]") {
  const etk::EtSystem sys = etk::make_system(-3.0, 3.0, 1.0, 298.0, 1.0);
  const std::complex<double> e = etk::eta(sys);
  CHECK_THAT(e.real(), WithinRel(3685.9341424529835, 1e-14));
  CHECK_THAT(e.imag(), WithinRel(-47.23829251000357, 1e-14));
}

TEST_CASE("eta structure: sign, linearity, component ratio", "[core]") {
  const etk::EtSystem sys = etk::make_system(-1.0, 2.5, 0.5, 320.0, 0.2);
  const std::complex<double> e = etk::eta(sys);
  CHECK(e.real() > 0.0);
  CHECK(e.imag() < 0.0);

  etk::EtSystem doubled = sys;
  doubled.lambda = 5.0;
  CHECK(etk::eta(doubled) == 2.0 * e);

  // Im/Re = -hbar gamma / (2 k_B T)
  const double expect =
      -etk::hbar * sys.gamma() / (2.0 * etk::kb * sys.temperature);
  CHECK_THAT(e.imag() / e.real(), WithinRel(expect, 1e-14));
}

TEST_CASE("semiclassical validity ratio and flag", "[core]") {
  const etk::Validity ok =
      etk::semiclassical_validity(etk::make_system(-3.0, 3.0, 1.0, 298.0, 1.0));
  CHECK(ok.valid);
  CHECK_THAT(ok.ratio, WithinRel(1.3743861426467439, 1e-13));

  const etk::Validity cold =
      etk::semiclassical_validity(etk::make_system(-3.0, 3.0, 1.0, 50.0, 1.0));
  CHECK_FALSE(cold.valid);
  CHECK_THAT(cold.ratio, WithinRel(0.2306017017863664, 1e-13));

  const etk::Validity degenerate =
      etk::semiclassical_validity(etk::make_system(0.0, 3.0, 0.0, 298.0, 1.0));
  CHECK(degenerate.valid);
  CHECK(std::isinf(degenerate.ratio));
}

TEST_CASE("validity threshold sits exactly at ratio 1", "[core]") {
  // V chosen so k_B T == sqrt(V^2 + e0^2/4) exactly at e0 = 0.
  const double v = etk::kb * 298.0;
  const etk::Validity edge =
      etk::semiclassical_validity(etk::make_system(0.0, 3.0, v, 298.0, 1.0));
  CHECK(edge.valid);
  CHECK(edge.ratio == 1.0);
}

TEST_CASE("constants round-trip through the CSV number format", "[core]") {
  CHECK(roundtrip(etk::hbar) == etk::hbar);
  CHECK(roundtrip(etk::kb) == etk::kb);
  CHECK(roundtrip(2.4777098547999996) == 2.4777098547999996);
  CHECK_THAT(etk::kb * 298.0, WithinAbs(2.4777098547999996, 1e-15));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::ldexp(u(rng), i % 200 - 100);
    CHECK(roundtrip(v) == v);
  }
}
