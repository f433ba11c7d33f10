#include "opanet/gain.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "opanet/errors.hpp"
#include "opanet/fiber.hpp"
#include "opanet/units.hpp"

using namespace opanet;

namespace {
constexpr double hnlf_gamma_m = 0.015;  // W^-1 m^-1
}

TEST_CASE("phase mismatch expansion") {
  // frozen: lambda0 1.55, pump 1.5505, signal 1.5755, slope 0.03
  CHECK(gain::phase_mismatch({1.55, 1.5505, 1.5755, 0.03}) ==
        doctest::Approx(-7.3503573125995836e-3).epsilon(1e-12));
  // pump on the zero-dispersion wavelength, or signal on the pump: no mismatch
  CHECK(gain::phase_mismatch({1.55, 1.55, 1.60, 0.03}) == 0.0);
  CHECK(gain::phase_mismatch({1.55, 1.56, 1.56, 0.03}) == 0.0);
  // pump above lambda0 and detuned signal: anomalous side, negative
  CHECK(gain::phase_mismatch({1.55, 1.5505, 1.5755, 0.03}) < 0.0);
  // pump below lambda0: sign flips
  CHECK(gain::phase_mismatch({1.55, 1.5495, 1.5755, 0.03}) > 0.0);

  CHECK_THROWS_AS(gain::phase_mismatch({0.9, 1.55, 1.56, 0.03}), InvalidInput);
  CHECK_THROWS_AS(gain::phase_mismatch({1.55, 2.5, 1.56, 0.03}), InvalidInput);
  CHECK_THROWS_AS(gain::phase_mismatch({1.55, 1.55, 1.56, 0.0}), InvalidInput);
}

TEST_CASE("gain parameter and the two printed forms") {
  const double p = 1.0;
  const double rate = hnlf_gamma_m * p;

  SUBCASE("landmarks") {
    auto at = [&](double db) {
      return gain::gain_parameter(db, hnlf_gamma_m, p);
    };
    CHECK(at(0.0).k == doctest::Approx(2.0 * rate).epsilon(1e-15));
    CHECK(at(0.0).g_squared == 0.0);
    CHECK(at(-2.0 * rate).k == 0.0);
    CHECK(at(-2.0 * rate).g_squared ==
          doctest::Approx(rate * rate).epsilon(1e-14));
    CHECK(at(-4.0 * rate).g_squared == doctest::Approx(0.0));
    CHECK_THROWS_AS(gain::gain_parameter(0.0, 0.0, 1.0), InvalidInput);
    CHECK_THROWS_AS(gain::gain_parameter(0.0, hnlf_gamma_m, -1.0),
                    InvalidInput);
  }

  SUBCASE("product form equals difference form") {
    for (int i = -20; i <= 20; ++i) {
      const double db = 0.35 * i * rate;
      const auto par = gain::gain_parameter(db, hnlf_gamma_m, p);
      const double difference_form = rate * rate - 0.25 * par.k * par.k;
      CHECK(std::abs(par.g_squared - difference_form) <=
            1e-12 * std::max({std::abs(par.g_squared),
                              std::abs(difference_form), rate * rate}));
    }
  }

  SUBCASE("positive gain parameter exactly inside the band") {
    for (int i = -60; i <= 20; ++i) {
      const double db = 0.1 * i * rate;  // spans [-6, 2] gamma*P
      const double g2 = gain::gain_parameter(db, hnlf_gamma_m, p).g_squared;
      const bool inside = db > -4.0 * rate && db < 0.0;
      CHECK(inside == (g2 > 0.0));
    }
  }
}

TEST_CASE("closed-form signal gain landmarks") {
  SUBCASE("perfect matching, gamma*P*L = 3") {
    // frozen: 1 + sinh^2(3)
    const auto g = gain::signal_gain(-2.0 * hnlf_gamma_m, hnlf_gamma_m, 1.0,
                                     200.0);
    CHECK(g.regime == gain::Regime::Hyperbolic);
    CHECK(g.k == 0.0);
    CHECK(g.gain_linear == doctest::Approx(101.35781806122795).epsilon(1e-12));
    CHECK(g.gain_db ==
          doctest::Approx(10.0 * std::log10(101.35781806122795))
              .epsilon(1e-12));
  }

  SUBCASE("degenerate edge, delta_beta = 0") {
    const auto g = gain::signal_gain(0.0, hnlf_gamma_m, 1.0, 100.0);
    CHECK(g.regime == gain::Regime::Degenerate);
    CHECK(g.g_squared == 0.0);
    CHECK(g.gain_linear == doctest::Approx(3.25).epsilon(1e-14));
    CHECK(g.gain_db == doctest::Approx(5.1188336097887400).epsilon(1e-10));
  }

  SUBCASE("oscillatory outside the band") {
    const auto g = gain::signal_gain(0.06, hnlf_gamma_m, 1.0, 500.0);
    CHECK(g.regime == gain::Regime::Oscillatory);
    CHECK(g.g_squared < 0.0);
    CHECK(g.gain_linear >= 1.0);
  }

  SUBCASE("zero length and zero pump") {
    const auto zero_l = gain::signal_gain(-0.01, hnlf_gamma_m, 1.0, 0.0);
    CHECK(zero_l.gain_linear == 1.0);
    CHECK(zero_l.gain_db == 0.0);
    const auto zero_p = gain::signal_gain(-0.01, hnlf_gamma_m, 0.0, 500.0);
    CHECK(zero_p.gain_linear == 1.0);
  }

  SUBCASE("gain is never below one") {
    for (double db : {-0.09, -0.05, -0.02, 0.0, 0.02, 0.3})
      for (double len : {1.0, 50.0, 500.0})
        CHECK(gain::signal_gain(db, hnlf_gamma_m, 1.0, len).gain_linear >=
              1.0);
  }

  SUBCASE("decibel cap raises instead of overflowing") {
    CHECK_THROWS_AS(
        gain::signal_gain(-2.0 * hnlf_gamma_m, hnlf_gamma_m, 1.0, 1e6),
        NumericalError);
    CHECK_THROWS_WITH(
        gain::signal_gain(-2.0 * hnlf_gamma_m, hnlf_gamma_m, 1.0, 1e6),
        doctest::Contains("300"));
  }

  SUBCASE("invariant gain_db = 10 log10(gain_linear)") {
    for (double db : {-0.05, -0.03, -0.001, 0.0, 0.01}) {
      const auto g = gain::signal_gain(db, hnlf_gamma_m, 1.2, 350.0);
      CHECK(g.gain_db ==
            doctest::Approx(10.0 * std::log10(g.gain_linear)).epsilon(1e-13));
    }
  }
}

TEST_CASE("gain is continuous across the regime boundaries") {
  const double p = 1.0;
  const double rate = hnlf_gamma_m * p;
  const double length = 400.0;
  // straddle g^2 = 0 at delta_beta = 0: g^2 = +/- eps with eps tiny
  const double eps = 1e-12 * rate * rate;
  const double db_minus = -eps / rate;  // g^2 ~ +eps (inside the band)
  const double db_plus = eps / rate;    // g^2 ~ -eps (outside)
  const double g_minus =
      gain::signal_gain(db_minus, hnlf_gamma_m, p, length).gain_linear;
  const double g_plus =
      gain::signal_gain(db_plus, hnlf_gamma_m, p, length).gain_linear;
  const double g_zero = gain::signal_gain(0.0, hnlf_gamma_m, p, length)
                            .gain_linear;
  CHECK(std::abs(g_minus / g_zero - 1.0) <= 1e-6);
  CHECK(std::abs(g_plus / g_zero - 1.0) <= 1e-6);

  // same straddle at the lower band edge delta_beta = -4 gamma P
  const double edge = -4.0 * rate;
  const double g_in =
      gain::signal_gain(edge + 1e-9 * rate, hnlf_gamma_m, p, length)
          .gain_linear;
  const double g_out =
      gain::signal_gain(edge - 1e-9 * rate, hnlf_gamma_m, p, length)
          .gain_linear;
  CHECK(std::abs(g_in / g_out - 1.0) <= 1e-6);
}

TEST_CASE("gain grows strictly with pump power and length inside the band") {
  const double db = -0.01;
  double previous = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double p = 0.5 + 0.1 * i;
    const double g = gain::signal_gain(db, hnlf_gamma_m, p, 500.0).gain_linear;
    CHECK(g > previous);
    previous = g;
  }
  previous = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double g =
        gain::signal_gain(db, hnlf_gamma_m, 1.0, 60.0 * i).gain_linear;
    CHECK(g > previous);
    previous = g;
  }
}

TEST_CASE("series form converges to the closed form") {
  const double p = 1.0;

  SUBCASE("one term is the degenerate quadratic") {
    const double glp = hnlf_gamma_m * p * 150.0;
    CHECK(gain::gain_series(-0.02, hnlf_gamma_m, p, 150.0, 1) ==
          doctest::Approx(1.0 + glp * glp).epsilon(1e-15));
  }

  SUBCASE("three terms at |g|L = 0.5") {
    // frozen truncation error of the three-term series
    const double length = 0.5 / (hnlf_gamma_m * p);  // kappa = 0: g = gamma P
    const double exact =
        gain::signal_gain(-2.0 * hnlf_gamma_m * p, hnlf_gamma_m, p, length)
            .gain_linear;
    const double series =
        gain::gain_series(-2.0 * hnlf_gamma_m * p, hnlf_gamma_m, p, length, 3);
    const double rel = std::abs(series / exact - 1.0);
    CHECK(rel == doctest::Approx(1.2749e-6).epsilon(0.01));
    CHECK(rel <= 1e-4);
  }

  SUBCASE("eight terms reach 1e-6 up to |g|L = 2, both regimes") {
    const double rate = hnlf_gamma_m * p;
    for (double db : {-3.9 * rate, -2.0 * rate, -0.5 * rate, 0.4 * rate,
                      2.0 * rate}) {
      const double g2 =
          gain::gain_parameter(db, hnlf_gamma_m, p).g_squared;
      const double g_abs = std::sqrt(std::abs(g2));
      for (double x : {0.5, 1.0, 2.0}) {
        const double length = g_abs > 0.0 ? x / g_abs : 300.0;
        const double exact =
            gain::signal_gain(db, hnlf_gamma_m, p, length).gain_linear;
        const double series =
            gain::gain_series(db, hnlf_gamma_m, p, length, 8);
        CHECK(std::abs(series / exact - 1.0) <= 1e-6);
      }
    }
  }

  SUBCASE("term count must be positive") {
    CHECK_THROWS_AS(gain::gain_series(-0.01, hnlf_gamma_m, p, 100.0, 0),
                    InvalidInput);
  }
}

TEST_CASE("high-gain limit and its breakdown") {
  const double p = 1.0;
  auto matched_gain = [&](double glp) {
    const double length = glp / (hnlf_gamma_m * p);
    return gain::signal_gain(-2.0 * hnlf_gamma_m * p, hnlf_gamma_m, p, length)
        .gain_linear;
  };
  auto limit = [&](double glp) {
    return gain::high_gain_approx(hnlf_gamma_m, p, glp / (hnlf_gamma_m * p));
  };

  // frozen: exp(6)/4 and the relative gaps at gamma*P*L = 3 and 5
  CHECK(limit(3.0) == doctest::Approx(100.85719837318414).epsilon(1e-12));
  CHECK(std::abs(limit(3.0) / matched_gain(3.0) - 1.0) ==
        doctest::Approx(4.939132448e-3).epsilon(1e-3));
  CHECK(std::abs(limit(5.0) / matched_gain(5.0) - 1.0) ==
        doctest::Approx(9.0793676e-5).epsilon(1e-3));

  // the documented small-argument value, not an error
  CHECK(gain::high_gain_approx(hnlf_gamma_m, 0.0, 100.0) == 0.25);
  CHECK_THROWS_AS(gain::high_gain_approx(hnlf_gamma_m, -1.0, 100.0),
                  InvalidInput);
  CHECK_THROWS_AS(gain::high_gain_approx(hnlf_gamma_m, 10.0, 1e7),
                  NumericalError);
}

TEST_CASE("decibel slope form") {
  // frozen: HNLF tabulated slope, 1 W, 0.5 km; SMF 0.5 W, 1 km
  CHECK(gain::gain_db_slope_form(1.0, 0.5, 131.0) ==
        doctest::Approx(59.479400086720376).epsilon(1e-12));
  CHECK(gain::gain_db_slope_form(0.5, 1.0, 16.0) ==
        doctest::Approx(1.9794000867203761).epsilon(1e-12));
  // small products go negative; documented, not clamped
  CHECK(gain::gain_db_slope_form(0.1, 0.1, 16.0) < 0.0);
  CHECK_THROWS_AS(gain::gain_db_slope_form(-1.0, 0.5, 131.0), InvalidInput);

  SUBCASE("equals the decibel of the exponential limit when S_p is derived") {
    for (double gamma_km : {1.8, 15.0})
      for (double p : {0.5, 1.0, 1.4})
        for (double km : {0.2, 0.5, 1.0}) {
          const double via_slope = gain::gain_db_slope_form(
              p, km, parametric_gain_slope(gamma_km));
          const double via_exp = 10.0 * std::log10(gain::high_gain_approx(
                                     gamma_km / 1e3, p, km * 1e3));
          CHECK(via_slope ==
                doctest::Approx(via_exp).epsilon(1e-9));
        }
  }
}

TEST_CASE("regime names") {
  CHECK(gain::to_string(gain::Regime::Hyperbolic) == "hyperbolic");
  CHECK(gain::to_string(gain::Regime::Degenerate) == "degenerate");
  CHECK(gain::to_string(gain::Regime::Oscillatory) == "oscillatory");
}
