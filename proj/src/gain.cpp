#include "opanet/gain.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "opanet/errors.hpp"
#include "opanet/units.hpp"

namespace opanet::gain {
namespace {

// sinh(x)/x and sin(x)/x with their x -> 0 limits. Neither loses precision
// for small nonzero x, so only x == 0 needs the explicit limit.
double sinhc(double x) { return x == 0.0 ? 1.0 : std::sinh(x) / x; }
double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

void check_pump(double gamma_w_m, double p_pump_w) {
  if (!(gamma_w_m > 0.0))
    throw InvalidInput("gamma must be positive (W^-1 m^-1)");
  if (!(p_pump_w >= 0.0)) throw InvalidInput("pump power must be >= 0 W");
}

[[noreturn]] void throw_gain_cap(double gain_db) {
  throw NumericalError("signal gain " + std::to_string(gain_db) +
                       " dB exceeds the " +
                       std::to_string(static_cast<int>(max_gain_db)) +
                       " dB cap");
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Hyperbolic:
      return "hyperbolic";
    case Regime::Degenerate:
      return "degenerate";
    case Regime::Oscillatory:
      return "oscillatory";
  }
  return "unknown";
}

void PhaseMatchInput::validate() const {
  auto in_window = [](double w) { return w > 1.0 && w < 2.0; };
  if (!in_window(lambda0) || !in_window(lambda_p) || !in_window(lambda_s))
    throw InvalidInput("wavelengths must lie inside (1.0, 2.0) um");
  if (!(disp_slope > 0.0))
    throw InvalidInput("dispersion slope must be positive (ps/(nm^2 km))");
}

double phase_mismatch(const PhaseMatchInput& in) {
  in.validate();
  const double lambda0_m = in.lambda0 * units::um_to_m;
  const double s0 = in.disp_slope * units::disp_slope_to_si;  // s/m^3
  const double pump_offset = (in.lambda_p - in.lambda0) * units::um_to_m;
  const double detuning = (in.lambda_p - in.lambda_s) * units::um_to_m;
  return -(2.0 * std::numbers::pi * units::speed_of_light /
           (lambda0_m * lambda0_m)) *
         s0 * pump_offset * detuning * detuning;
}

GainParameter gain_parameter(double delta_beta, double gamma_w_m,
                             double p_pump_w) {
  check_pump(gamma_w_m, p_pump_w);
  const double pump_rate = gamma_w_m * p_pump_w;  // gamma*P, m^-1
  // The product form of g^2 stays accurate near delta_beta = 0, where the
  // difference form (gamma*P)^2 - k^2/4 cancels.
  return {delta_beta + 2.0 * pump_rate,
          -delta_beta * (0.25 * delta_beta + pump_rate)};
}

GainBreakdown signal_gain(double delta_beta, double gamma_w_m, double p_pump_w,
                          double length_m) {
  if (!(length_m >= 0.0)) throw InvalidInput("length must be >= 0 m");
  const GainParameter par = gain_parameter(delta_beta, gamma_w_m, p_pump_w);
  const double pump_rate = gamma_w_m * p_pump_w;

  // The regime label is a classification aid; the gain itself is computed
  // from whichever closed form matches the sign of g^2, and the branches
  // meet continuously at g^2 = 0.
  const double regime_tol = 1e-12 * pump_rate * pump_rate;
  Regime regime = Regime::Degenerate;
  if (par.g_squared > regime_tol)
    regime = Regime::Hyperbolic;
  else if (par.g_squared < -regime_tol)
    regime = Regime::Oscillatory;

  double gain_linear;
  if (par.g_squared > 0.0 && std::sqrt(par.g_squared) * length_m > 30.0) {
    // sinh(x) = e^x/2 to better than double precision here; stay in logs so
    // the decibel cap fires before anything overflows.
    const double g = std::sqrt(par.g_squared);
    const double x = g * length_m;
    const double amp_log10 =
        std::log10(pump_rate / (2.0 * g)) + x / std::numbers::ln10;
    if (20.0 * amp_log10 > max_gain_db) throw_gain_cap(20.0 * amp_log10);
    const double amplitude = std::pow(10.0, amp_log10);
    gain_linear = 1.0 + amplitude * amplitude;
  } else {
    double h;  // growth kernel: sinh(gL)/g, L, or sin(|g|L)/|g|
    if (par.g_squared >= 0.0)
      h = length_m * sinhc(std::sqrt(par.g_squared) * length_m);
    else
      h = length_m * sinc(std::sqrt(-par.g_squared) * length_m);
    const double amplitude = pump_rate * h;
    if (std::abs(amplitude) > 1.0 &&
        20.0 * std::log10(std::abs(amplitude)) > max_gain_db)
      throw_gain_cap(20.0 * std::log10(std::abs(amplitude)));
    gain_linear = 1.0 + amplitude * amplitude;
  }

  return {delta_beta,
          par.k,
          par.g_squared,
          regime,
          gain_linear,
          10.0 * std::log10(gain_linear)};
}

double gain_series(double delta_beta, double gamma_w_m, double p_pump_w,
                   double length_m, int terms) {
  if (terms < 1) throw InvalidInput("series needs at least one term");
  if (!(length_m >= 0.0)) throw InvalidInput("length must be >= 0 m");
  const GainParameter par = gain_parameter(delta_beta, gamma_w_m, p_pump_w);
  const double x2 = par.g_squared * length_m * length_m;  // (g*L)^2, signed
  double term = 1.0;
  double bracket = 1.0;
  for (int n = 1; n < terms; ++n) {
    term *= x2 / static_cast<double>(2 * n * (2 * n + 1));
    bracket += term;
  }
  const double amplitude = gamma_w_m * p_pump_w * length_m * bracket;
  return 1.0 + amplitude * amplitude;
}

double high_gain_approx(double gamma_w_m, double p_pump_w, double length_m) {
  if (!(gamma_w_m >= 0.0) || !(p_pump_w >= 0.0) || !(length_m >= 0.0))
    throw InvalidInput("high-gain limit needs non-negative inputs");
  const double glp = gamma_w_m * p_pump_w * length_m;
  const double db = units::db_per_exp2 * glp - units::high_gain_offset_db;
  if (db > max_gain_db) throw_gain_cap(db);
  return std::exp(2.0 * glp) / 4.0;
}

double gain_db_slope_form(double p_pump_w, double length_km,
                          double s_p_db_w_km) {
  if (!(p_pump_w >= 0.0) || !(length_km >= 0.0) || !(s_p_db_w_km >= 0.0))
    throw InvalidInput("slope form needs non-negative inputs");
  const double db =
      p_pump_w * length_km * s_p_db_w_km - units::high_gain_offset_db;
  if (db > max_gain_db) throw_gain_cap(db);
  return db;
}

}  // namespace opanet::gain
