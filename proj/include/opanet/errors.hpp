#pragma once

#include <stdexcept>
#include <string>

namespace opanet {

// A user-supplied value is outside the physical or contractual domain of an
// operation (bad wavelength, negative power, missing unit suffix, ...).
// The command line maps this to exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configuration file, preset name, or sweep description is malformed
// (unknown key, unknown preset, uncovered parameter). Exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation left the representable range or an integrator gave up
// (gain beyond the decibel cap, step budget exhausted, non-finite result).
// Carries how far along the fiber the computation got, in meters, when that
// is meaningful. Exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double achieved_z_m = 0.0)
      : std::runtime_error(what), achieved_z_m_(achieved_z_m) {}

  double achieved_z() const noexcept { return achieved_z_m_; }

 private:
  double achieved_z_m_;
};

// Filesystem trouble while writing tables or reading a config. Exit code 4.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace opanet
