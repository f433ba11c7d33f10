#include "opanet/pulse.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "opanet/errors.hpp"
#include "opanet/gain.hpp"
#include "opanet/units.hpp"

namespace opanet::pulse {

void PumpModulation::validate() const {
  if (!(p0_w > 0.0)) throw InvalidInput("peak pump power must be positive");
  if (!(omega_m > 0.0))
    throw InvalidInput("modulation frequency must be positive");
}

double peak_gain_param(double delta_beta, double gamma_w_m, double p0_w) {
  if (!(p0_w > 0.0)) throw InvalidInput("peak pump power must be positive");
  const double band_edge = -4.0 * gamma_w_m * p0_w;
  if (!(delta_beta <= 0.0) || !(delta_beta >= band_edge)) {
    std::ostringstream msg;
    msg << "delta_beta " << delta_beta << " m^-1 is outside the gain band ["
        << band_edge << ", 0]";
    throw InvalidInput(msg.str());
  }
  // Same expression the amplifier model uses; kept as the single source.
  const double g2 = gain::gain_parameter(delta_beta, gamma_w_m, p0_w).g_squared;
  return std::sqrt(std::max(g2, 0.0));
}

double pump_curvature(const PumpModulation& mod) {
  mod.validate();
  return -2.0 * mod.p0_w * mod.omega_m * mod.omega_m;
}

double pulse_width(double delta_beta, double gamma_w_m,
                   const PumpModulation& mod, double length_m) {
  mod.validate();
  if (!(delta_beta < 0.0))
    throw InvalidInput("pulse compression needs delta_beta < 0");
  if (!(length_m > 0.0)) throw InvalidInput("length must be positive");
  const double g0 = peak_gain_param(delta_beta, gamma_w_m, mod.p0_w);
  const double curvature = pump_curvature(mod);  // < 0
  const double denom = delta_beta * gamma_w_m * curvature * length_m;
  const double radicand = 2.0 * g0 / denom;
  if (!(radicand > 0.0)) {
    std::ostringstream msg;
    msg << "pulse width radicand " << radicand
        << " is not positive: g0 = " << g0 << " m^-1 (positive expected)"
        << ", delta_beta = " << delta_beta << " m^-1 (negative expected)"
        << ", pump curvature = " << curvature << " W/s^2 (negative expected)"
        << ", length = " << length_m << " m (positive expected)";
    throw NumericalError(msg.str());
  }
  return std::sqrt(radicand);
}

double pulse_amplitude(double g0, double length_m) {
  if (!(g0 > 0.0)) throw InvalidInput("peak gain parameter must be positive");
  if (!(length_m >= 0.0)) throw InvalidInput("length must be >= 0 m");
  // 20*log10(A0) in dB; same cap as the gain computations.
  const double db =
      units::db_per_exp2 * g0 * length_m - 20.0 * std::log10(g0);
  if (db > gain::max_gain_db)
    throw NumericalError("pulse amplitude " + std::to_string(db) +
                         " dB exceeds the " +
                         std::to_string(static_cast<int>(gain::max_gain_db)) +
                         " dB cap");
  return std::exp(g0 * length_m) / g0;
}

std::complex<double> gaussian_envelope(const PulseParams& params, double t_s) {
  if (!(params.t0_s > 0.0)) throw InvalidInput("pulse width must be positive");
  const double u = t_s / params.t0_s;
  const std::complex<double> exponent(-0.5 * u * u,
                                      -0.5 * params.chirp_c * u * u);
  return params.a0 * std::exp(exponent);
}

}  // namespace opanet::pulse
