#pragma once

#include <string>

namespace opanet {

// Physical parameters of one fiber type, in data-sheet units.
struct FiberProfile {
  std::string name;
  double alpha_db = 0.0;     // attenuation, dB/km
  double a_eff = 0.0;        // effective area, um^2
  double gamma = 0.0;        // nonlinear coefficient, W^-1 km^-1
  double s_p = 0.0;          // parametric gain slope, dB/(W km)
  double lambda0 = 1.55;     // zero-dispersion wavelength, um
  double disp_slope = 0.07;  // dispersion slope at lambda0, ps/(nm^2 km)

  double gamma_per_m() const { return gamma / 1e3; }  // W^-1 m^-1

  // Throws InvalidInput unless alpha_db >= 0 and a_eff, gamma, s_p,
  // lambda0 are all positive.
  void validate() const;
};

enum class FiberKind { Smf, Hnlf };

// Built-in profiles: a standard single-mode fiber and a highly nonlinear
// fiber. Values follow the usual vendor numbers for the two families.
FiberProfile builtin_fiber(FiberKind kind);

// Case-insensitive lookup by name ("SMF" or "HNLF"); unknown names throw
// ConfigError listing the available choices.
FiberProfile builtin_fiber(const std::string& name);

// alpha[dB/km] * ln(10)/10 -> linear attenuation in km^-1.
double attenuation_db_to_linear(double alpha_db);

// gamma = 2*pi*n2 / (lambda * A_eff), returned in W^-1 km^-1.
// n2 in m^2/W, lambda in um, a_eff in um^2; all inputs must be positive.
double nonlinear_coefficient(double n2, double lambda_um, double a_eff_um2);

// (1 - exp(-alpha*L)) / alpha in km; alpha = 0 degenerates to L itself.
double effective_length(double alpha_db_per_km, double length_km);

// S_p = 10*log10(e^2) * gamma: decibel gain slope in dB/(W km) for
// gamma in W^-1 km^-1.
double parametric_gain_slope(double gamma_w_km);

}  // namespace opanet
