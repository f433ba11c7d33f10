#pragma once

#include <string_view>

namespace opanet::gain {

// Inputs for the phase-mismatch expansion around the zero-dispersion
// wavelength. Wavelengths in um, slope in ps/(nm^2 km).
struct PhaseMatchInput {
  double lambda0;     // zero-dispersion wavelength
  double lambda_p;    // pump wavelength
  double lambda_s;    // signal wavelength
  double disp_slope;  // dispersion slope at lambda0

  // Wavelengths must lie in (1.0, 2.0) um and the slope must be positive.
  void validate() const;
};

// Which branch of the parametric solution applies.
enum class Regime { Hyperbolic, Degenerate, Oscillatory };

std::string_view to_string(Regime regime);

struct GainParameter {
  double k;          // total phase mismatch, m^-1
  double g_squared;  // squared gain parameter, m^-2 (sign selects the regime)
};

struct GainBreakdown {
  double delta_beta;   // linear phase mismatch, m^-1
  double k;            // total phase mismatch, m^-1
  double g_squared;    // m^-2
  Regime regime;
  double gain_linear;  // power gain, >= 1
  double gain_db;      // 10*log10(gain_linear)
};

// Decibel cap for all gain computations; beyond it a NumericalError is
// raised instead of overflowing.
inline constexpr double max_gain_db = 300.0;

// delta_beta = -(2*pi*c/lambda0^2) * S0 * (lambda_p - lambda0)
//            * (lambda_p - lambda_s)^2, in m^-1.
// Vanishes when the pump sits at lambda0 or the signal sits on the pump.
double phase_mismatch(const PhaseMatchInput& in);

// k = delta_beta + 2*gamma*P and g^2 = (gamma*P)^2 - k^2/4, which is
// identically -delta_beta*(delta_beta/4 + gamma*P).
// gamma in W^-1 m^-1 (> 0), p_pump in W (>= 0).
GainParameter gain_parameter(double delta_beta, double gamma_w_m,
                             double p_pump_w);

// Small-signal gain of the parametric interaction over a lossless span:
//   g^2 > 0:  G = 1 + (gamma*P/g)^2 * sinh^2(g*L)
//   g^2 = 0:  G = 1 + (gamma*P*L)^2
//   g^2 < 0:  G = 1 + (gamma*P/|g|)^2 * sin^2(|g|*L)
// All three meet continuously. length in m (>= 0).
GainBreakdown signal_gain(double delta_beta, double gamma_w_m, double p_pump_w,
                          double length_m);

// Truncated power-series form of the same gain,
//   G = 1 + (gamma*P*L)^2 * [ sum_{n<terms} (g*L)^{2n} / (2n+1)! ]^2,
// which converges to signal_gain as terms grows. terms >= 1.
double gain_series(double delta_beta, double gamma_w_m, double p_pump_w,
                   double length_m, int terms);

// Perfectly phase-matched high-gain limit G ~ exp(2*gamma*P*L)/4.
// Only meaningful for gamma*P*L >> 1; small arguments are returned as-is
// (e.g. 0.25 at zero) so the breakdown of the approximation is visible.
double high_gain_approx(double gamma_w_m, double p_pump_w, double length_m);

// Same limit in decibels, written against the decibel slope:
//   G_dB = P * L * S_p - 10*log10(4)
// with P in W, L in km, s_p in dB/(W km). May be negative for small P*L*S_p.
double gain_db_slope_form(double p_pump_w, double length_km,
                          double s_p_db_w_km);

}  // namespace opanet::gain
