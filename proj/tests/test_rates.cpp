#include <cmath>
#include <complex>

#include <catch2/catch_amalgamated.hpp>

#include "etk/cfkernel.hpp"
#include "etk/constants.hpp"
#include "etk/errors.hpp"
#include "etk/rates.hpp"
#include "etk/system.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using C = std::complex<double>;

namespace {
const etk::EtSystem ref = etk::make_system(-3.0, 3.0, 1.0, 298.0, 1.0);
}

TEST_CASE("converged rates on the reference system", "[rates]") {
  const etk::RatePair rp = etk::rate_constants(ref);
  CHECK_THAT(rp.forward, WithinRel(1.4304196213931122, 1e-9));
  CHECK_THAT(rp.backward, WithinRel(0.41839260399460837, 1e-9));
  CHECK(rp.n_used == 512);
  CHECK(rp.s_arg == 0.0);
  CHECK(rp.validity);
}

TEST_CASE("rates at a positive Laplace point", "[rates]") {
  const etk::ConvergedKernel ck = etk::kernel_converged(0.5, ref);
  const etk::RatePair rp = etk::rate_resolutions(0.5, ck.kernel, ref);
  CHECK_THAT(rp.forward, WithinRel(1.6258394473448614, 1e-9));
  CHECK_THAT(rp.backward, WithinRel(0.9675098764075287, 1e-9));
  CHECK(ck.n_used == 512);
}

TEST_CASE("rate resolutions guard their inputs", "[rates]") {
  const etk::ConvergedKernel ck = etk::kernel_converged(0.0, ref);
  CHECK_THROWS_AS(etk::rate_resolutions(-0.5, ck.kernel, ref),
                  etk::ArgumentError);
  CHECK_THROWS_AS(etk::rate_resolutions(0.5, ck.kernel, ref),
                  etk::LevelMismatchError);
  etk::KernelElements wrong = ck.kernel;
  wrong.level = 1;
  CHECK_THROWS_AS(etk::rate_resolutions(0.0, wrong, ref),
                  etk::LevelMismatchError);
}

TEST_CASE("both rates vanish identically at V = 0", "[rates]") {
  const etk::EtSystem sys = etk::make_system(-3.0, 3.0, 0.0, 298.0, 1.0);
  const etk::KernelElements kern = etk::kernel_at(0.0, 64, sys);
  // The kernel itself is nonzero (the solvent still fluctuates) ...
  CHECK(std::abs(kern.x) > 0.0);
  // ... but the rate prefactors kill both channels exactly.
  const etk::RatePair rp = etk::rate_resolutions(0.0, kern, sys);
  CHECK(rp.forward == 0.0);
  CHECK(rp.backward == 0.0);
}

TEST_CASE("forward equals backward at zero driving force", "[rates]") {
  const etk::EtSystem sys = etk::make_system(0.0, 3.0, 1.0, 298.0, 0.0165);
  const etk::RatePair rp = etk::rate_constants(sys);
  CHECK_THAT(rp.forward, WithinRel(11.801135644147081, 1e-9));
  CHECK_THAT(rp.backward, WithinRel(rp.forward, 1e-6));
  CHECK(rp.n_used == 32);
}

TEST_CASE("weak coupling reproduces the golden-rule rate within 2%",
          "[rates]") {
  const etk::EtSystem sys = etk::make_system(-3.0, 3.0, 0.01, 298.0, 10.0);
  const etk::RatePair rp = etk::rate_constants(sys);
  CHECK_THAT(rp.forward, WithinRel(0.0010137805173136363, 1e-9));
  CHECK_THAT(rp.backward, WithinRel(0.0003019491334509214, 1e-9));
  CHECK(rp.n_used == 2048);
  CHECK_THAT(rp.forward, WithinRel(etk::marcus_rate(sys), 0.02));
}

TEST_CASE("rates stay finite and positive as lambda -> 0", "[rates]") {
  const etk::EtSystem sys = etk::make_system(-1.0, 1e-6, 0.01, 298.0, 1.0);
  const etk::RatePair rp = etk::rate_constants(sys);
  CHECK_THAT(rp.forward, WithinRel(1.1858851240407274e-9, 1e-9));
  CHECK_THAT(rp.backward, WithinRel(7.876312328963902e-10, 1e-9));
  CHECK(rp.forward > 0.0);
  CHECK(rp.n_used == 8);
}

TEST_CASE("outside the validity regime the backward rate can go negative",
          "[rates]") {
  const etk::EtSystem cold = etk::make_system(-3.0, 3.0, 1.0, 50.0, 1.0);
  const etk::RatePair rp = etk::rate_constants(cold);
  CHECK_THAT(rp.forward, WithinRel(5.045403100239589, 1e-9));
  CHECK_THAT(rp.backward, WithinRel(-0.17181081438009446, 1e-9));
  CHECK_FALSE(rp.validity);
}

TEST_CASE("golden-rule rate: activationless value and symmetry", "[rates]") {
  const etk::EtSystem act = etk::make_system(-3.0, 3.0, 0.01, 298.0, 10.0);
  CHECK_THAT(etk::marcus_rate(act), WithinRel(0.0010236748210876794, 1e-13));

  // (E0 + lambda)^2 identical at E0 = -1 and -5 for lambda = 3.
  const double a =
      etk::marcus_rate(etk::make_system(-1.0, 3.0, 1.0, 298.0, 1.0));
  const double b =
      etk::marcus_rate(etk::make_system(-5.0, 3.0, 1.0, 298.0, 1.0));
  CHECK(a == b);

  CHECK_THROWS_AS(etk::marcus_rate(etk::make_system(0.0, 0.0, 1.0, 298.0, 1.0)),
                  etk::ParameterError);
}

TEST_CASE("golden-rule rate: exact parabola in the driving force", "[rates]") {
  const double lam = 3.0;
  const double kt = etk::kb * 298.0;
  auto resid = [&](double e0) {
    const double k =
        etk::marcus_rate(etk::make_system(e0, lam, 1.0, 298.0, 1.0));
    return std::log(k) + (e0 + lam) * (e0 + lam) / (4.0 * lam * kt);
  };
  // ln k + activation term is E0-independent.
  CHECK_THAT(resid(-5.0), WithinRel(resid(0.5), 1e-12));
  CHECK_THAT(resid(-2.0), WithinRel(resid(1.0), 1e-12));
}

TEST_CASE("assembled rate matrix matches the closed-form rates", "[rates]") {
  for (double s : {0.0, 0.5, 2.0}) {
    const etk::ConvergedKernel ck = etk::kernel_converged(s, ref);
    const etk::RatePair rp = etk::rate_resolutions(s, ck.kernel, ref);
    const etk::Mat2 K = etk::assemble_K(s, ck.kernel, ref);
    CHECK_THAT(-K.a00.real(), WithinRel(rp.forward, 1e-10));
    CHECK_THAT(K.a01.real(), WithinRel(rp.backward, 1e-10));
  }
}

TEST_CASE("assembled rate matrix conserves probability column-wise",
          "[rates]") {
  const etk::ConvergedKernel ck = etk::kernel_converged(0.0, ref);
  const etk::Mat2 K = etk::assemble_K(0.0, ck.kernel, ref);
  const double scale = std::abs(K.a00) + std::abs(K.a11);
  CHECK(std::abs(K.a00 + K.a10) < 1e-12 * scale);
  CHECK(std::abs(K.a01 + K.a11) < 1e-12 * scale);
}

TEST_CASE("assembled rate matrix is zero at V = 0", "[rates]") {
  const etk::EtSystem sys = etk::make_system(-3.0, 3.0, 0.0, 298.0, 1.0);
  const etk::KernelElements kern = etk::kernel_at(0.0, 32, sys);
  const etk::Mat2 K = etk::assemble_K(0.0, kern, sys);
  CHECK(std::abs(K.a00) == 0.0);
  CHECK(std::abs(K.a01) == 0.0);
  CHECK(std::abs(K.a10) == 0.0);
  CHECK(std::abs(K.a11) == 0.0);
}
