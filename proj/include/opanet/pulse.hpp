#pragma once

#include <complex>

namespace opanet::pulse {

// Sinusoidally modulated pump: P(t) = P0 * cos^2(omega_m * t).
struct PumpModulation {
  double p0_w = 1.0;       // peak pump power, W
  double omega_m = 0.0;    // modulation angular frequency, rad/s

  void validate() const;  // both must be positive
};

// Parameters of the compressed pulse carved out of the gain peak.
struct PulseParams {
  double g0 = 0.0;       // peak gain parameter, m^-1
  double t0_s = 0.0;     // pulse width, s
  double a0 = 0.0;       // peak amplitude, sqrt of peak power ratio
  double chirp_c = 0.0;  // linear chirp parameter
};

// Gain parameter at the pump peak: g0 = sqrt(-delta_beta*(delta_beta/4 +
// gamma*P0)), sharing the gain-parameter computation with the amplifier
// model. delta_beta must lie in the gain band [-4*gamma*P0, 0]; both ends
// give g0 = 0. gamma in W^-1 m^-1.
double peak_gain_param(double delta_beta, double gamma_w_m, double p0_w);

// Second time derivative of the pump power at its peak: -2*P0*omega_m^2,
// in W/s^2. Always negative.
double pump_curvature(const PumpModulation& mod);

// Width of the compressed pulse,
//   T0 = sqrt(2*g0 / (delta_beta * gamma * P''(0) * L)),
// in seconds. Requires delta_beta < 0 (inside the gain band) and length > 0;
// the radicand is positive exactly when the band and curvature conditions
// hold, otherwise a NumericalError reports each factor's sign.
double pulse_width(double delta_beta, double gamma_w_m,
                   const PumpModulation& mod, double length_m);

// Peak amplitude ratio A0 = exp(g0*L)/g0 for g0 > 0, with the same decibel
// cap as the gain computations.
double pulse_amplitude(double g0, double length_m);

// Chirped Gaussian envelope A(t) = a0 * exp(-(1 + i*C)/2 * (t/T0)^2).
std::complex<double> gaussian_envelope(const PulseParams& params, double t_s);

}  // namespace opanet::pulse
