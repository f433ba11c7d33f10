#include "opanet/config.hpp"

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <utility>

#include "json.hpp"
#include "opanet/csv.hpp"
#include "opanet/errors.hpp"

namespace opanet {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) {
        known = true;
        break;
      }
    if (!known)
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

double parse_scaled(
    const std::string& text, const std::string& what,
    std::initializer_list<std::pair<const char*, double>> suffixes,
    const std::string& suffix_list) {
  const std::size_t begin = text.find_first_not_of(" \t");
  if (begin == std::string::npos)
    throw InvalidInput(what + " value is empty");
  const std::size_t end = text.find_last_not_of(" \t");
  const std::string body = text.substr(begin, end - begin + 1);

  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc{} || ptr == body.data())
    throw InvalidInput(what + " '" + text +
                       "' is not a number with a unit suffix");
  std::string suffix(ptr, body.data() + body.size());
  while (!suffix.empty() && suffix.front() == ' ') suffix.erase(suffix.begin());

  if (suffix.empty()) {
    if (value == 0.0) return 0.0;  // an unambiguous zero needs no unit
    throw InvalidInput(what + " '" + text + "' needs a unit suffix (" +
                       suffix_list + ")");
  }
  for (const auto& [name, scale] : suffixes) {
    if (suffix == name) {
      if (value < 0.0) throw InvalidInput(what + " must be >= 0");
      return value * scale;
    }
  }
  throw InvalidInput(what + " '" + text + "' has an unknown unit '" + suffix +
                     "' (expected " + suffix_list + ")");
}

double duration_field(const json& v, const std::string& name) {
  if (v.is_string()) return parse_duration(v.get<std::string>());
  if (v.is_number() && v.get<double>() == 0.0) return 0.0;
  throw ConfigError(name + " must be a string with a unit suffix, e.g. "
                    "\"100us\"");
}

double frequency_field(const json& v, const std::string& name) {
  if (v.is_string()) return parse_frequency(v.get<std::string>());
  if (v.is_number() && v.get<double>() == 0.0) return 0.0;
  throw ConfigError(name + " must be a string with a unit suffix, e.g. "
                    "\"10GHz\"");
}

FiberProfile fiber_from(const json& v) {
  if (v.is_string()) return builtin_fiber(v.get<std::string>());
  if (!v.is_object())
    throw ConfigError("fiber must be a preset name or an object");
  check_keys(v, "fiber",
             {"name", "alpha_db", "a_eff", "gamma", "s_p", "lambda0",
              "disp_slope"});
  FiberProfile f;
  f.name = v.value("name", std::string("custom"));
  f.alpha_db = v.value("alpha_db", 0.0);
  f.a_eff = v.value("a_eff", 0.0);
  f.gamma = v.value("gamma", 0.0);
  f.lambda0 = v.value("lambda0", 1.55);
  f.disp_slope = v.value("disp_slope", 0.07);
  if (v.contains("s_p"))
    f.s_p = v["s_p"].get<double>();
  else if (f.gamma > 0.0)
    f.s_p = parametric_gain_slope(f.gamma);
  f.validate();
  return f;
}

void pon_from(const json& v, pon::PonConfig& cfg) {
  check_keys(v, "pon",
             {"k_lasers", "n_in", "m_out", "w_users", "data_rate_gbit_s",
              "slot", "t_laser", "rho", "t_tx"});
  if (v.contains("k_lasers")) cfg.k_lasers = v["k_lasers"].get<int>();
  if (v.contains("n_in")) cfg.n_in = v["n_in"].get<int>();
  if (v.contains("m_out")) cfg.m_out = v["m_out"].get<int>();
  if (v.contains("w_users")) cfg.w_users = v["w_users"].get<int>();
  if (v.contains("data_rate_gbit_s"))
    cfg.data_rate = v["data_rate_gbit_s"].get<double>();
  if (v.contains("slot")) cfg.slot_s = duration_field(v["slot"], "pon.slot");
  if (v.contains("t_laser"))
    cfg.t_laser_s = duration_field(v["t_laser"], "pon.t_laser");
  if (v.contains("rho")) cfg.rho = v["rho"].get<double>();
  if (v.contains("t_tx")) cfg.t_tx_s = duration_field(v["t_tx"], "pon.t_tx");
  cfg.validate();
}

void plan_from(const json& v, pon::SpectralPlan& plan) {
  check_keys(v, "plan",
             {"lambda_start_um", "lambda_end_um", "n_links", "n_channels"});
  if (v.contains("lambda_start_um"))
    plan.lambda_start_um = v["lambda_start_um"].get<double>();
  if (v.contains("lambda_end_um"))
    plan.lambda_end_um = v["lambda_end_um"].get<double>();
  if (v.contains("n_links")) plan.n_links = v["n_links"].get<int>();
  if (v.contains("n_channels")) plan.n_channels = v["n_channels"].get<int>();
  plan.validate();
}

void pump_from(const json& v, pulse::PumpModulation& pump) {
  check_keys(v, "pump", {"p0_w", "f_m"});
  if (v.contains("p0_w")) pump.p0_w = v["p0_w"].get<double>();
  if (v.contains("f_m"))
    pump.omega_m = 2.0 * std::numbers::pi * frequency_field(v["f_m"],
                                                            "pump.f_m");
  pump.validate();
}

void ode_from(const json& v, ode::OdeConfig& cfg) {
  check_keys(v, "ode", {"method", "step_m", "rel_tol", "max_steps"});
  if (v.contains("method")) {
    const std::string method = v["method"].get<std::string>();
    if (method == "rk4")
      cfg.method = ode::Method::FixedRk4;
    else if (method == "rk45")
      cfg.method = ode::Method::AdaptiveRk45;
    else
      throw ConfigError("ode.method must be 'rk4' or 'rk45', not '" + method +
                        "'");
  }
  if (v.contains("step_m")) cfg.step_m = v["step_m"].get<double>();
  if (v.contains("rel_tol")) cfg.rel_tol = v["rel_tol"].get<double>();
  if (v.contains("max_steps")) cfg.max_steps = v["max_steps"].get<long>();
  cfg.validate();
}

void output_from(const json& v, OutputConfig& out) {
  check_keys(v, "output", {"directory", "format"});
  if (v.contains("directory"))
    out.directory = v["directory"].get<std::string>();
  if (v.contains("format")) out.format = v["format"].get<std::string>();
  if (out.format != "csv" && out.format != "json")
    throw ConfigError("output.format must be 'csv' or 'json'");
}

}  // namespace

double parse_duration(const std::string& text) {
  return parse_scaled(
      text, "duration",
      {{"ns", 1e-9}, {"us", 1e-6}, {"ms", 1e-3}, {"s", 1.0}},
      "ns, us, ms, s");
}

double parse_frequency(const std::string& text) {
  return parse_scaled(
      text, "frequency",
      {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}},
      "Hz, kHz, MHz, GHz");
}

ToolConfig default_config() {
  ToolConfig cfg;
  cfg.fiber = builtin_fiber(FiberKind::Hnlf);
  cfg.pump = {1.0, 2.0 * std::numbers::pi * 1e10};  // 10 GHz modulation
  return cfg;
}

ToolConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path.string() + "': " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  ToolConfig cfg = default_config();
  try {
    check_keys(j, "config", {"fiber", "pon", "plan", "pump", "ode", "output"});
    if (j.contains("fiber")) cfg.fiber = fiber_from(j["fiber"]);
    if (j.contains("pon")) pon_from(j["pon"], cfg.pon);
    if (j.contains("plan")) plan_from(j["plan"], cfg.plan);
    if (j.contains("pump")) pump_from(j["pump"], cfg.pump);
    if (j.contains("ode")) ode_from(j["ode"], cfg.ode);
    if (j.contains("output")) output_from(j["output"], cfg.output);
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path.string() + "': " + e.what());
  }
  return cfg;
}

std::string config_json(const ToolConfig& cfg) {
  json j;
  j["fiber"] = {{"name", cfg.fiber.name},
                {"alpha_db", cfg.fiber.alpha_db},
                {"a_eff", cfg.fiber.a_eff},
                {"gamma", cfg.fiber.gamma},
                {"s_p", cfg.fiber.s_p},
                {"lambda0", cfg.fiber.lambda0},
                {"disp_slope", cfg.fiber.disp_slope}};
  j["pon"] = {{"k_lasers", cfg.pon.k_lasers},
              {"n_in", cfg.pon.n_in},
              {"m_out", cfg.pon.m_out},
              {"w_users", cfg.pon.w_users},
              {"data_rate_gbit_s", cfg.pon.data_rate},
              {"slot_s", cfg.pon.slot_s},
              {"t_laser_s", cfg.pon.t_laser_s},
              {"rho", cfg.pon.rho},
              {"t_tx_s", cfg.pon.t_tx_s}};
  j["plan"] = {{"lambda_start_um", cfg.plan.lambda_start_um},
               {"lambda_end_um", cfg.plan.lambda_end_um},
               {"n_links", cfg.plan.n_links},
               {"n_channels", cfg.plan.n_channels}};
  j["pump"] = {{"p0_w", cfg.pump.p0_w},
               {"f_m_hz", cfg.pump.omega_m / (2.0 * std::numbers::pi)}};
  j["ode"] = {{"method",
               cfg.ode.method == ode::Method::FixedRk4 ? "rk4" : "rk45"},
              {"step_m", cfg.ode.step_m},
              {"rel_tol", cfg.ode.rel_tol},
              {"max_steps", cfg.ode.max_steps}};
  j["output"] = {{"directory", cfg.output.directory},
                 {"format", cfg.output.format}};
  return j.dump(2) + "\n";
}

sweep::SweepSpec parse_sweep_spec_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("sweep spec: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("sweep spec must be a JSON object");

  sweep::SweepSpec spec;
  try {
    check_keys(j, "sweep spec",
               {"target", "swept", "series", "fixed", "fixed_text", "preset"});
    spec.target = j.at("target").get<std::string>();
    const json& sw = j.at("swept");
    check_keys(sw, "swept", {"name", "min", "max", "steps"});
    spec.swept = {sw.at("name").get<std::string>(), sw.at("min").get<double>(),
                  sw.at("max").get<double>(), sw.at("steps").get<int>()};
    if (j.contains("series")) {
      const json& se = j["series"];
      check_keys(se, "series", {"name", "values"});
      sweep::SweepSeries series;
      series.name = se.at("name").get<std::string>();
      for (const json& v : se.at("values")) {
        if (v.is_number()) {
          const double d = v.get<double>();
          series.values.push_back({csv::format_number(d), d});
        } else if (v.is_string()) {
          series.values.push_back({v.get<std::string>(), {}});
        } else if (v.is_object()) {
          check_keys(v, "series value", {"label", "value"});
          sweep::SeriesValue sv;
          sv.label = v.at("label").get<std::string>();
          if (v.contains("value")) sv.number = v["value"].get<double>();
          series.values.push_back(sv);
        } else {
          throw ConfigError(
              "series values must be numbers, strings, or {label, value}");
        }
      }
      spec.series = series;
    }
    if (j.contains("fixed"))
      spec.fixed = j["fixed"].get<std::map<std::string, double>>();
    if (j.contains("fixed_text"))
      spec.fixed_text =
          j["fixed_text"].get<std::map<std::string, std::string>>();
    if (j.contains("preset")) spec.preset = j["preset"].get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("sweep spec: ") + e.what());
  }
  return spec;
}

sweep::SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read sweep spec '" + path.string() + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_sweep_spec_json(text);
}

}  // namespace opanet
