#include "opanet/pulse.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "opanet/errors.hpp"

using namespace opanet;

namespace {
constexpr double gamma_m = 0.015;  // W^-1 m^-1
const pulse::PumpModulation mod_10ghz{1.0, 2.0 * std::numbers::pi * 1e10};
}  // namespace

TEST_CASE("peak gain parameter across the band") {
  const double p0 = 1.0;
  const double rate = gamma_m * p0;

  CHECK(pulse::peak_gain_param(-2.0 * rate, gamma_m, p0) ==
        doctest::Approx(rate).epsilon(1e-14));
  CHECK(pulse::peak_gain_param(-1.0 * rate, gamma_m, p0) ==
        doctest::Approx(std::sqrt(0.75) * rate).epsilon(1e-14));
  // both closed edges evaluate to zero instead of throwing
  CHECK(pulse::peak_gain_param(0.0, gamma_m, p0) == 0.0);
  CHECK(pulse::peak_gain_param(-4.0 * rate, gamma_m, p0) ==
        doctest::Approx(0.0));
  CHECK_THROWS_AS(pulse::peak_gain_param(1e-6, gamma_m, p0), InvalidInput);
  CHECK_THROWS_AS(pulse::peak_gain_param(-4.0 * rate - 1e-6, gamma_m, p0),
                  InvalidInput);
}

TEST_CASE("pump envelope curvature") {
  // frozen: 1 W pump driven at 10 GHz
  CHECK(pulse::pump_curvature(mod_10ghz) ==
        doctest::Approx(-7.8956835208714869e21).epsilon(1e-12));
  CHECK(pulse::pump_curvature(mod_10ghz) < 0.0);

  SUBCASE("matches a finite difference of the cosine envelope") {
    // P(t) = P0 cos^2(omega t) has P''(0) = -2 P0 omega^2
    const double w = mod_10ghz.omega_m;
    const double dt = 1e-15;
    auto power = [&](double t) {
      const double c = std::cos(w * t);
      return mod_10ghz.p0_w * c * c;
    };
    const double fd =
        (power(dt) - 2.0 * power(0.0) + power(-dt)) / (dt * dt);
    CHECK(std::abs(fd / pulse::pump_curvature(mod_10ghz) - 1.0) <= 1e-4);
  }

  CHECK_THROWS_AS(pulse::pump_curvature({0.0, 1e10}), InvalidInput);
  CHECK_THROWS_AS(pulse::pump_curvature({1.0, 0.0}), InvalidInput);
}

TEST_CASE("compressed pulse width") {
  const double db = -2.0 * gamma_m;  // matched at 1 W

  SUBCASE("frozen half-kilometre value") {
    CHECK(pulse::pulse_width(db, gamma_m, mod_10ghz, 500.0) ==
          doctest::Approx(4.1093629604099987e-12).epsilon(1e-9));
  }

  SUBCASE("width squared times distance is invariant") {
    const double reference =
        std::pow(pulse::pulse_width(db, gamma_m, mod_10ghz, 100.0), 2) *
        100.0;
    for (double length : {200.0, 400.0, 800.0}) {
      const double t0 = pulse::pulse_width(db, gamma_m, mod_10ghz, length);
      CHECK(t0 * t0 * length == doctest::Approx(reference).epsilon(1e-12));
    }
  }

  SUBCASE("width scales inversely with the modulation frequency") {
    const pulse::PumpModulation doubled{1.0,
                                        2.0 * mod_10ghz.omega_m};
    CHECK(pulse::pulse_width(db, gamma_m, doubled, 500.0) ==
          doctest::Approx(0.5 *
                          pulse::pulse_width(db, gamma_m, mod_10ghz, 500.0))
              .epsilon(1e-12));
  }

  SUBCASE("vanishing peak gain cannot compress") {
    CHECK_THROWS_AS(
        pulse::pulse_width(-4.0 * gamma_m, gamma_m, mod_10ghz, 500.0),
        NumericalError);
  }

  SUBCASE("preconditions") {
    CHECK_THROWS_AS(pulse::pulse_width(0.01, gamma_m, mod_10ghz, 500.0),
                    InvalidInput);
    CHECK_THROWS_AS(pulse::pulse_width(db, gamma_m, mod_10ghz, 0.0),
                    InvalidInput);
  }
}

TEST_CASE("peak amplitude growth") {
  // frozen: g0 = 0.015 per metre over half a kilometre
  CHECK(pulse::pulse_amplitude(0.015, 500.0) ==
        doctest::Approx(120536.16096373755).epsilon(1e-12));
  CHECK_THROWS_AS(pulse::pulse_amplitude(0.0, 500.0), InvalidInput);
  CHECK_THROWS_AS(pulse::pulse_amplitude(0.015, 5000.0), NumericalError);
}

TEST_CASE("chirped gaussian envelope") {
  pulse::PulseParams params;
  params.g0 = 0.015;
  params.t0_s = 4.1093629604099987e-12;
  params.a0 = 120536.16096373755;
  params.chirp_c = 2.0;

  SUBCASE("peak and characteristic width") {
    CHECK(std::abs(pulse::gaussian_envelope(params, 0.0)) ==
          doctest::Approx(params.a0).epsilon(1e-14));
    CHECK(std::abs(pulse::gaussian_envelope(params, params.t0_s)) ==
          doctest::Approx(params.a0 * std::exp(-0.5)).epsilon(1e-12));
  }

  SUBCASE("magnitude is even in time, chirp or not") {
    for (double t : {0.3, 1.0, 1.7}) {
      const double ts = t * params.t0_s;
      CHECK(std::abs(pulse::gaussian_envelope(params, ts)) ==
            doctest::Approx(std::abs(pulse::gaussian_envelope(params, -ts)))
                .epsilon(1e-14));
    }
  }

  SUBCASE("intensity full width at half maximum") {
    const double half = 0.5 * std::norm(pulse::gaussian_envelope(params, 0.0));
    double lo = 0.0;
    double hi = 2.0 * params.t0_s;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (std::norm(pulse::gaussian_envelope(params, mid)) > half)
        lo = mid;
      else
        hi = mid;
    }
    const double fwhm = 2.0 * 0.5 * (lo + hi);
    CHECK(fwhm == doctest::Approx(1.6651092223153955 * params.t0_s)
                      .epsilon(1e-9));
  }

  SUBCASE("chirp adds a quadratic phase without touching the magnitude") {
    auto flat = params;
    flat.chirp_c = 0.0;
    const double ts = 1.2 * params.t0_s;
    const auto chirped = pulse::gaussian_envelope(params, ts);
    const auto plain = pulse::gaussian_envelope(flat, ts);
    CHECK(std::abs(chirped) == doctest::Approx(std::abs(plain)).epsilon(1e-14));
    const double x2 = (ts / params.t0_s) * (ts / params.t0_s);
    CHECK(std::abs(std::arg(chirped / plain)) ==
          doctest::Approx(0.5 * params.chirp_c * x2).epsilon(1e-12));
  }

  SUBCASE("width must be positive") {
    auto bad = params;
    bad.t0_s = 0.0;
    CHECK_THROWS_AS(pulse::gaussian_envelope(bad, 0.0), InvalidInput);
  }
}
