#include "opanet/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

#include "opanet/errors.hpp"
#include "opanet/fiber.hpp"
#include "opanet/gain.hpp"
#include "opanet/pon.hpp"
#include "opanet/pulse.hpp"

namespace opanet::sweep {
namespace {

// Parameter lookup for one grid point. Precedence: the swept value, then the
// series value, then the fixed maps.
struct ParamView {
  const SweepSpec* spec;
  double swept_value;
  const SeriesValue* series_value;  // null when the spec has no series

  std::optional<double> find_num(const std::string& name) const {
    if (name == spec->swept.name) return swept_value;
    if (series_value && spec->series->name == name && series_value->number)
      return *series_value->number;
    auto it = spec->fixed.find(name);
    if (it != spec->fixed.end()) return it->second;
    return std::nullopt;
  }

  double num(const std::string& name) const {
    if (auto v = find_num(name)) return *v;
    throw ConfigError("missing numeric parameter '" + name + "'");
  }

  std::optional<std::string> find_text(const std::string& name) const {
    if (series_value && spec->series->name == name && !series_value->number)
      return series_value->label;
    auto it = spec->fixed_text.find(name);
    if (it != spec->fixed_text.end()) return it->second;
    return std::nullopt;
  }
};

int as_count(const ParamView& p, const std::string& name, int fallback) {
  if (auto v = p.find_num(name)) return static_cast<int>(std::lround(*v));
  return fallback;
}

// Nonlinearity and dispersion inputs for the gain targets, either from a
// named fiber preset or from bare numbers.
struct GainMedium {
  double gamma_w_m;
  double lambda0_um;
  double disp_slope;
  std::string preset;  // empty for bare numbers
};

GainMedium resolve_medium(const ParamView& p) {
  if (auto name = p.find_text("fiber")) {
    FiberProfile f = builtin_fiber(*name);
    double lambda0 = p.find_num("lambda0_um").value_or(f.lambda0);
    double slope = p.find_num("disp_slope").value_or(f.disp_slope);
    return {f.gamma_per_m(), lambda0, slope, f.name};
  }
  const double gamma_w_km = p.num("gamma_w_km");
  return {gamma_w_km / 1e3, p.find_num("lambda0_um").value_or(1.55),
          p.find_num("disp_slope").value_or(0.07), ""};
}

double resolve_delta_beta(const ParamView& p, const GainMedium& medium,
                          double p_pump_w) {
  const bool matched = p.find_num("phase_matched").value_or(0.0) != 0.0;
  const auto lambda_s = p.find_num("lambda_s_um");
  const auto direct = p.find_num("delta_beta_per_m");
  if (matched + lambda_s.has_value() + direct.has_value() != 1)
    throw ConfigError(
        "exactly one of phase_matched, lambda_s_um, delta_beta_per_m must "
        "select the phase mismatch");
  if (matched) return -2.0 * medium.gamma_w_m * p_pump_w;
  if (direct) return *direct;
  gain::PhaseMatchInput in{medium.lambda0_um, p.num("lambda_p_um"), *lambda_s,
                           medium.disp_slope};
  return gain::phase_mismatch(in);
}

struct Target {
  std::vector<std::string> out_columns;
  std::function<std::vector<double>(const ParamView&, std::string&)> eval;
};

pon::PonConfig pon_from(const ParamView& p) {
  pon::PonConfig cfg;
  cfg.k_lasers = as_count(p, "k_lasers", cfg.k_lasers);
  cfg.n_in = as_count(p, "n_in", cfg.n_in);
  cfg.m_out = as_count(p, "m_out", cfg.m_out);
  cfg.w_users = as_count(p, "w_users", cfg.w_users);
  if (auto v = p.find_num("data_rate_gbit_s")) cfg.data_rate = *v;
  if (auto v = p.find_num("slot_s")) cfg.slot_s = *v;
  if (auto v = p.find_num("t_laser_s")) cfg.t_laser_s = *v;
  if (auto v = p.find_num("rho")) cfg.rho = *v;
  if (auto v = p.find_num("t_tx_s")) cfg.t_tx_s = *v;
  return cfg;
}

// Feeder rate needed to give each station a target bandwidth; the inverse
// of bandwidth_per_user in the feeder-rate argument.
std::vector<double> eval_data_rate(const ParamView& p, std::string&) {
  const double bw = p.num("bw_user_gbit_s");
  if (!(bw >= 0.0)) throw InvalidInput("per-user bandwidth must be >= 0");
  pon::PonConfig cfg = pon_from(p);
  cfg.validate();
  if (!(cfg.slot_s > 0.0))
    throw InvalidInput("slot time must be positive to invert the bandwidth");
  const double cycle = cfg.slot_s + cfg.t_laser_s;
  return {bw * cfg.n_in * cfg.m_out * cycle / (cfg.k_lasers * cfg.slot_s)};
}

std::vector<double> eval_bandwidth(const ParamView& p, std::string&) {
  return {pon::bandwidth_per_user(pon_from(p))};
}

std::vector<double> eval_delay(const ParamView& p, std::string&) {
  return {pon::network_delay(pon_from(p)) * 1e3};  // s -> ms
}

std::vector<double> eval_opa_gain(const ParamView& p, std::string& fiber_used) {
  const GainMedium medium = resolve_medium(p);
  fiber_used = medium.preset;
  const double p_pump = p.num("p_pump_w");
  const double length_m = p.num("length_km") * 1e3;
  const double db = resolve_delta_beta(p, medium, p_pump);
  const gain::GainBreakdown g =
      gain::signal_gain(db, medium.gamma_w_m, p_pump, length_m);
  return {g.gain_db, g.gain_linear};
}

// Shared chain for the bit-rate targets: as the band is split into more
// links the per-link spacing shrinks by 1/n_links, and the operating
// mismatch is pushed from the matched point toward the band edge by the
// same ratio; narrower pulses and higher rates follow. band_fill sets how
// much of the remaining band the mismatch can take up (default 0.9).
struct MtdmPoint {
  double t0_ps;
  double t0_ns;
  int n_links;
  int n_channels;
};

MtdmPoint eval_mtdm_chain(const ParamView& p, std::string& fiber_used) {
  const GainMedium medium = resolve_medium(p);
  fiber_used = medium.preset;
  const int n_links = as_count(p, "n_links", 0);
  if (n_links < 1) throw InvalidInput("link count must be >= 1");
  const double p0 = p.num("p0_w");
  const double f_m = p.num("f_m_hz");
  const double length_m = p.num("length_km") * 1e3;
  const double band_fill = p.find_num("band_fill").value_or(0.9);
  if (!(band_fill >= 0.0 && band_fill < 1.0))
    throw InvalidInput("band_fill must lie in [0, 1)");

  const double spacing_ratio = 1.0 / n_links;  // spacing(n)/spacing(1)
  const double delta_beta = -2.0 * medium.gamma_w_m * p0 *
                            (1.0 + band_fill * (1.0 - spacing_ratio));
  pulse::PumpModulation mod{p0, 2.0 * std::numbers::pi * f_m};
  const double t0_s =
      pulse::pulse_width(delta_beta, medium.gamma_w_m, mod, length_m);
  return {t0_s * 1e12, t0_s * 1e9, n_links, as_count(p, "n_channels", 16)};
}

std::vector<double> eval_mtdm_channel(const ParamView& p, std::string& fu) {
  const MtdmPoint m = eval_mtdm_chain(p, fu);
  return {m.t0_ps, pon::bit_rate_channel(m.t0_ns)};
}

std::vector<double> eval_mtdm_link(const ParamView& p, std::string& fu) {
  const MtdmPoint m = eval_mtdm_chain(p, fu);
  return {m.t0_ps, pon::bit_rate_link(m.t0_ns, m.n_channels)};
}

std::vector<double> eval_mtdm_core(const ParamView& p, std::string& fu) {
  const MtdmPoint m = eval_mtdm_chain(p, fu);
  return {m.t0_ps, pon::bit_rate_core(m.t0_ns, m.n_links, m.n_channels)};
}

const std::map<std::string, Target>& targets() {
  static const std::map<std::string, Target> table = {
      {"data_rate_from_bw", {{"data_rate_gbit_s"}, eval_data_rate}},
      {"bandwidth_per_user", {{"bw_user_gbit_s"}, eval_bandwidth}},
      {"network_delay", {{"delay_ms"}, eval_delay}},
      {"opa_gain", {{"gain_db", "gain_linear"}, eval_opa_gain}},
      {"mtdm_channel", {{"t0_ps", "bit_rate_channel_gbit_s"}, eval_mtdm_channel}},
      {"mtdm_link", {{"t0_ps", "bit_rate_link_gbit_s"}, eval_mtdm_link}},
      {"mtdm_core", {{"t0_ps", "bit_rate_core_mbit_s"}, eval_mtdm_core}},
  };
  return table;
}

std::string point_prefix(const SweepSpec& spec, double x,
                         const SeriesValue* sv) {
  std::ostringstream msg;
  msg << "sweep '" << spec.target << "' failed at " << spec.swept.name << " = "
      << x;
  if (sv) msg << ", " << spec.series->name << " = " << sv->label;
  msg << ": ";
  return msg.str();
}

}  // namespace

void SweepSpec::validate() const {
  if (!targets().count(target)) {
    std::string names;
    for (const auto& [name, t] : targets()) names += " " + name;
    throw ConfigError("unknown sweep target '" + target + "' (available:" +
                      names + ")");
  }
  if (swept.name.empty()) throw ConfigError("swept axis needs a name");
  if (swept.steps < 2) throw ConfigError("swept axis needs at least 2 steps");
  if (!(swept.min < swept.max) || !std::isfinite(swept.min) ||
      !std::isfinite(swept.max))
    throw ConfigError("swept axis needs finite min < max");
  if (fixed.count(swept.name) || fixed_text.count(swept.name))
    throw ConfigError("swept parameter '" + swept.name +
                      "' also appears among the fixed parameters");
  if (series) {
    if (series->name.empty()) throw ConfigError("series needs a name");
    if (series->name == swept.name)
      throw ConfigError("series parameter '" + series->name +
                        "' equals the swept parameter");
    if (fixed.count(series->name) || fixed_text.count(series->name))
      throw ConfigError("series parameter '" + series->name +
                        "' also appears among the fixed parameters");
    if (series->values.empty()) throw ConfigError("series needs values");
    const bool numeric = series->values.front().number.has_value();
    for (const auto& v : series->values) {
      if (v.number.has_value() != numeric)
        throw ConfigError("series values must be all numeric or all text");
      if (v.label.empty()) throw ConfigError("series values need labels");
    }
  }
}

std::vector<std::string> target_names() {
  std::vector<std::string> names;
  for (const auto& [name, t] : targets()) names.push_back(name);
  return names;
}

CurveSet run_sweep(const SweepSpec& spec, int threads) {
  spec.validate();
  const Target& target = targets().at(spec.target);

  std::vector<const SeriesValue*> series_values;
  if (spec.series)
    for (const auto& v : spec.series->values) series_values.push_back(&v);
  else
    series_values.push_back(nullptr);

  const bool numeric_series = spec.series && !spec.series->values.empty() &&
                              spec.series->values.front().number.has_value();
  const std::size_t steps = static_cast<std::size_t>(spec.swept.steps);
  const std::size_t total = series_values.size() * steps;

  CurveSet out;
  out.spec = spec;
  out.text_series = spec.series && !numeric_series;
  if (spec.series) out.columns.push_back(spec.series->name);
  out.columns.push_back(spec.swept.name);
  out.columns.insert(out.columns.end(), target.out_columns.begin(),
                     target.out_columns.end());
  out.labels.assign(total, "");
  out.rows.assign(total, {});

  std::vector<std::string> fiber_used(total);
  auto grid_value = [&spec](std::size_t i) {
    return spec.swept.min + (spec.swept.max - spec.swept.min) *
                                static_cast<double>(i) /
                                static_cast<double>(spec.swept.steps - 1);
  };

  auto eval_point = [&](std::size_t index) {
    const std::size_t si = index / steps;
    const std::size_t xi = index % steps;
    const SeriesValue* sv = series_values[si];
    const double x = grid_value(xi);
    const ParamView view{&spec, x, sv};
    std::vector<double> outs;
    try {
      outs = target.eval(view, fiber_used[index]);
    } catch (const NumericalError& e) {
      throw NumericalError(point_prefix(spec, x, sv) + e.what(),
                           e.achieved_z());
    } catch (const InvalidInput& e) {
      throw InvalidInput(point_prefix(spec, x, sv) + e.what());
    } catch (const ConfigError& e) {
      throw ConfigError(point_prefix(spec, x, sv) + e.what());
    }
    for (double v : outs)
      if (!std::isfinite(v))
        throw NumericalError(point_prefix(spec, x, sv) +
                             "produced a non-finite value");
    std::vector<double>& row = out.rows[index];
    row.reserve(outs.size() + 2);
    if (sv) {
      if (numeric_series)
        row.push_back(*sv->number);
      else
        out.labels[index] = sv->label;
    }
    row.push_back(x);
    row.insert(row.end(), outs.begin(), outs.end());
  };

  int workers = threads;
  if (workers <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    workers = total >= 64 ? static_cast<int>(std::min(hw, 8u)) : 1;
    if (workers < 1) workers = 1;
  }
  workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(workers), total));

  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) eval_point(i);
  } else {
    // Chunked over the grid; every worker writes disjoint row slots, and the
    // lowest-index failure wins so errors are reproducible.
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::size_t> error_index(workers, total);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        const std::size_t lo = total * w / workers;
        const std::size_t hi = total * (w + 1) / workers;
        for (std::size_t i = lo; i < hi; ++i) {
          try {
            eval_point(i);
          } catch (...) {
            errors[w] = std::current_exception();
            error_index[w] = i;
            return;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    std::size_t first = total;
    int who = -1;
    for (int w = 0; w < workers; ++w)
      if (errors[w] && error_index[w] < first) {
        first = error_index[w];
        who = w;
      }
    if (who >= 0) std::rethrow_exception(errors[who]);
  }

  for (const auto& f : fiber_used)
    if (!f.empty()) {
      out.fiber_used = f;
      break;
    }
  return out;
}

namespace {

SweepSeries laser_series() {
  return {"t_laser_s",
          {{"10us", 10e-6}, {"25us", 25e-6}, {"50us", 50e-6}}};
}

SweepSpec mtdm_preset(const std::string& target, const std::string& fiber,
                      std::initializer_list<double> lengths_km, double p0_w) {
  SweepSpec spec;
  spec.target = target;
  spec.swept = {"n_links", 1.0, 24.0, 24};
  SweepSeries series{"length_km", {}};
  for (double km : lengths_km) {
    std::ostringstream label;
    label << km << "km";
    series.values.push_back({label.str(), km});
  }
  spec.series = series;
  spec.fixed = {{"p0_w", p0_w}, {"f_m_hz", 1e10}, {"n_channels", 16.0}};
  spec.fixed_text = {{"fiber", fiber}};
  return spec;
}

}  // namespace

SweepSpec figure_preset(const std::string& id) {
  SweepSpec spec;
  if (id == "fig2") {
    spec.target = "data_rate_from_bw";
    spec.swept = {"bw_user_gbit_s", 0.05, 0.30, 11};
    spec.series = laser_series();
    spec.fixed = {{"k_lasers", 16.0}, {"n_in", 16.0}, {"m_out", 16.0},
                  {"slot_s", 100e-6}};
  } else if (id == "fig3" || id == "fig4") {
    spec.target = "network_delay";
    spec.swept = {"rho", 0.1, 1.0, 10};
    spec.series = laser_series();
    spec.fixed = {{"w_users", 256.0},
                  {"t_tx_s", id == "fig3" ? 100e-6 : 200e-6}};
  } else if (id == "fig5") {
    spec.target = "opa_gain";
    spec.swept = {"p_pump_w", 0.5, 1.4, 10};
    spec.series = SweepSeries{"fiber", {{"SMF", {}}, {"HNLF", {}}}};
    spec.fixed = {{"length_km", 0.5}, {"phase_matched", 1.0}};
  } else if (id == "fig6") {
    spec.target = "opa_gain";
    spec.swept = {"p_pump_w", 0.5, 1.4, 10};
    spec.series = SweepSeries{"lambda_s_um",
                              {{"1.575um", 1.575},
                               {"1.590um", 1.590},
                               {"1.605um", 1.605}}};
    spec.fixed = {{"length_km", 0.5}, {"lambda_p_um", 1.5502}};
    spec.fixed_text = {{"fiber", "HNLF"}};
  } else if (id == "fig7" || id == "fig9" || id == "fig11") {
    const char* target = id == "fig7" ? "mtdm_channel"
                         : id == "fig9" ? "mtdm_link" : "mtdm_core";
    spec = mtdm_preset(target, "HNLF", {0.2, 0.35, 0.5}, 1.0);
  } else if (id == "fig8" || id == "fig10" || id == "fig12") {
    const char* target = id == "fig8" ? "mtdm_channel"
                         : id == "fig10" ? "mtdm_link" : "mtdm_core";
    spec = mtdm_preset(target, "HNLF", {0.2, 0.35, 0.5}, 1.4);
  } else if (id == "fig13" || id == "fig15" || id == "fig17") {
    const char* target = id == "fig13" ? "mtdm_channel"
                         : id == "fig15" ? "mtdm_link" : "mtdm_core";
    spec = mtdm_preset(target, "SMF", {2.0, 5.0, 10.0}, 1.0);
  } else if (id == "fig14" || id == "fig16" || id == "fig18") {
    const char* target = id == "fig14" ? "mtdm_channel"
                         : id == "fig16" ? "mtdm_link" : "mtdm_core";
    spec = mtdm_preset(target, "SMF", {2.0, 5.0, 10.0}, 1.4);
  } else {
    std::string names;
    for (const auto& name : preset_names()) names += " " + name;
    throw ConfigError("unknown preset '" + id + "' (available:" + names + ")");
  }
  spec.preset = id;
  return spec;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (int i = 2; i <= 18; ++i) names.push_back("fig" + std::to_string(i));
  return names;
}

}  // namespace opanet::sweep
