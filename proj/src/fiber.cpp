#include "opanet/fiber.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "opanet/errors.hpp"
#include "opanet/units.hpp"

namespace opanet {

void FiberProfile::validate() const {
  if (!(alpha_db >= 0.0))
    throw InvalidInput("fiber '" + name + "': attenuation must be >= 0 dB/km");
  if (!(a_eff > 0.0))
    throw InvalidInput("fiber '" + name + "': effective area must be positive");
  if (!(gamma > 0.0))
    throw InvalidInput("fiber '" + name +
                       "': nonlinear coefficient must be positive");
  if (!(s_p > 0.0))
    throw InvalidInput("fiber '" + name + "': gain slope must be positive");
  if (!(lambda0 > 0.0))
    throw InvalidInput("fiber '" + name +
                       "': zero-dispersion wavelength must be positive");
}

FiberProfile builtin_fiber(FiberKind kind) {
  switch (kind) {
    case FiberKind::Smf:
      return {"SMF", 0.2, 85.0, 1.8, 16.0, 1.55, 0.07};
    case FiberKind::Hnlf:
      return {"HNLF", 0.7, 12.0, 15.0, 131.0, 1.55, 0.03};
  }
  throw ConfigError("unknown fiber kind");
}

FiberProfile builtin_fiber(const std::string& name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (upper == "SMF") return builtin_fiber(FiberKind::Smf);
  if (upper == "HNLF") return builtin_fiber(FiberKind::Hnlf);
  throw ConfigError("unknown fiber preset '" + name +
                    "' (available: SMF, HNLF)");
}

double attenuation_db_to_linear(double alpha_db) {
  if (!(alpha_db >= 0.0))
    throw InvalidInput("attenuation must be >= 0 dB/km");
  return alpha_db * std::numbers::ln10 / 10.0;
}

double nonlinear_coefficient(double n2, double lambda_um, double a_eff_um2) {
  if (!(n2 > 0.0) || !(lambda_um > 0.0) || !(a_eff_um2 > 0.0))
    throw InvalidInput(
        "nonlinear coefficient needs positive n2, wavelength, and area");
  const double lambda_m = lambda_um * units::um_to_m;
  const double a_eff_m2 = a_eff_um2 * units::um_to_m * units::um_to_m;
  const double gamma_w_m = 2.0 * std::numbers::pi * n2 / (lambda_m * a_eff_m2);
  return gamma_w_m * units::km_to_m;  // W^-1 m^-1 -> W^-1 km^-1
}

double effective_length(double alpha_db_per_km, double length_km) {
  if (!(length_km >= 0.0)) throw InvalidInput("fiber length must be >= 0 km");
  const double alpha = attenuation_db_to_linear(alpha_db_per_km);  // km^-1
  if (alpha == 0.0) return length_km;
  // -expm1 keeps precision when alpha*L is small.
  return -std::expm1(-alpha * length_km) / alpha;
}

double parametric_gain_slope(double gamma_w_km) {
  if (!(gamma_w_km > 0.0))
    throw InvalidInput("gain slope needs a positive nonlinear coefficient");
  return units::db_per_exp2 * gamma_w_km;
}

}  // namespace opanet
