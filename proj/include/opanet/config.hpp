#pragma once

#include <filesystem>
#include <string>

#include "opanet/fiber.hpp"
#include "opanet/ode.hpp"
#include "opanet/pon.hpp"
#include "opanet/pulse.hpp"
#include "opanet/sweep.hpp"

namespace opanet {

struct OutputConfig {
  std::string directory = ".";
  std::string format = "csv";  // csv | json
};

// Everything the command line can draw defaults from. Precedence is
// flags over config file over these built-in values.
struct ToolConfig {
  FiberProfile fiber;
  pon::PonConfig pon;
  pon::SpectralPlan plan;
  pulse::PumpModulation pump;
  ode::OdeConfig ode;
  OutputConfig output;
};

ToolConfig default_config();

// JSON file -> config. Unknown keys anywhere are rejected so a typo cannot
// silently fall back to a default. Durations and frequencies are strings
// with unit suffixes, exactly as on the command line.
ToolConfig load_config(const std::filesystem::path& path);

// The effective configuration as JSON text (times in seconds, the
// modulation as f_m_hz).
std::string config_json(const ToolConfig& cfg);

// "100us" -> 1e-4. Suffixes ns, us, ms, s. A bare number is rejected so
// that seconds and microseconds cannot be confused, except plain "0".
double parse_duration(const std::string& text);

// "10GHz" -> 1e10. Suffixes Hz, kHz, MHz, GHz; bare "0" allowed.
double parse_frequency(const std::string& text);

// Sweep description from JSON, the same shape the metadata sidecar echoes.
sweep::SweepSpec parse_sweep_spec_json(const std::string& text);
sweep::SweepSpec load_sweep_spec(const std::filesystem::path& path);

}  // namespace opanet
