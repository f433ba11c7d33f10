#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "opanet/config.hpp"
#include "opanet/csv.hpp"
#include "opanet/errata.hpp"
#include "opanet/errors.hpp"
#include "opanet/fiber.hpp"
#include "opanet/gain.hpp"
#include "opanet/ode.hpp"
#include "opanet/pon.hpp"
#include "opanet/pulse.hpp"
#include "opanet/sweep.hpp"
#include "opanet/version.hpp"

namespace {

using namespace opanet;

std::string fmt(double value) { return csv::format_number(value); }

double parse_duration_flag(const char* flag, const std::string& text) {
  try {
    return parse_duration(text);
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string(flag) + ": " + e.what());
  }
}

double parse_frequency_flag(const char* flag, const std::string& text) {
  try {
    return parse_frequency(text);
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string(flag) + ": " + e.what());
  }
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << w << "\n";
}

// --fiber NAME or --gamma plus optional overrides; falls back to the
// configured fiber when neither is given.
struct FiberOpts {
  std::string preset;
  double gamma_w_km = 0.0;
  double lambda0_um = 0.0;
  double disp_slope = 0.0;
  double s_p = 0.0;
  CLI::Option* preset_opt = nullptr;
  CLI::Option* gamma_opt = nullptr;
  CLI::Option* lambda0_opt = nullptr;
  CLI::Option* slope_opt = nullptr;
  CLI::Option* sp_opt = nullptr;

  void attach(CLI::App* cmd) {
    preset_opt =
        cmd->add_option("--fiber", preset, "fiber preset (SMF or HNLF)");
    gamma_opt = cmd->add_option("--gamma", gamma_w_km,
                                "nonlinear coefficient, W^-1 km^-1");
    lambda0_opt = cmd->add_option("--lambda0", lambda0_um,
                                  "zero-dispersion wavelength, um");
    slope_opt = cmd->add_option("--disp-slope", disp_slope,
                                "dispersion slope, ps/(nm^2 km)");
    sp_opt = cmd->add_option("--sp", s_p, "decibel gain slope, dB/(W km)");
    preset_opt->excludes(gamma_opt);
  }

  FiberProfile resolve(const ToolConfig& cfg) const {
    FiberProfile f = cfg.fiber;
    if (*preset_opt) {
      f = builtin_fiber(preset);
    } else if (*gamma_opt) {
      f = FiberProfile{};
      f.name = "custom";
      f.gamma = gamma_w_km;
      f.a_eff = 1.0;  // placeholder; the gain chain never reads it
      f.s_p = parametric_gain_slope(gamma_w_km);
    }
    if (*lambda0_opt) f.lambda0 = lambda0_um;
    if (*slope_opt) f.disp_slope = disp_slope;
    if (*sp_opt) f.s_p = s_p;
    f.validate();
    return f;
  }
};

// Exactly one way to pin the linear phase mismatch.
struct MismatchOpts {
  bool phase_matched = false;
  double delta_beta = 0.0;
  double lambda_s = 0.0;
  double lambda_p = 0.0;
  CLI::Option* pm_opt = nullptr;
  CLI::Option* db_opt = nullptr;
  CLI::Option* ls_opt = nullptr;
  CLI::Option* lp_opt = nullptr;

  void attach(CLI::App* cmd) {
    pm_opt = cmd->add_flag("--phase-matched", phase_matched,
                           "operate at delta_beta = -2*gamma*P (k = 0)");
    db_opt =
        cmd->add_option("--delta-beta", delta_beta,
                        "linear phase mismatch, m^-1");
    ls_opt = cmd->add_option("--lambda-s", lambda_s, "signal wavelength, um");
    lp_opt = cmd->add_option("--lambda-p", lambda_p, "pump wavelength, um");
    pm_opt->excludes(db_opt);
    pm_opt->excludes(ls_opt);
    db_opt->excludes(ls_opt);
    ls_opt->needs(lp_opt);
  }

  double resolve(const FiberProfile& fiber, double pump_w) const {
    if (phase_matched) return -2.0 * fiber.gamma_per_m() * pump_w;
    if (*db_opt) return delta_beta;
    if (*ls_opt)
      return gain::phase_mismatch(
          {fiber.lambda0, lambda_p, lambda_s, fiber.disp_slope});
    throw InvalidInput(
        "one of --phase-matched, --delta-beta, or --lambda-s is required");
  }

  std::optional<double> signal_um() const {
    return *ls_opt ? std::optional<double>(lambda_s) : std::nullopt;
  }
  std::optional<double> pump_um() const {
    return *lp_opt ? std::optional<double>(lambda_p) : std::nullopt;
  }
};

struct GainCmd {
  FiberOpts fiber;
  MismatchOpts mismatch;
  double pump_power = 0.0;
  double length_km = 0.0;

  void attach(CLI::App* cmd) {
    fiber.attach(cmd);
    mismatch.attach(cmd);
    cmd->add_option("--pump-power", pump_power, "pump power, W")->required();
    cmd->add_option("--length", length_km, "fiber length, km")->required();
  }

  void run(const ToolConfig& cfg, const std::string& format) const {
    const FiberProfile f = fiber.resolve(cfg);
    const double db = mismatch.resolve(f, pump_power);
    const gain::GainBreakdown g =
        gain::signal_gain(db, f.gamma_per_m(), pump_power, length_km * 1e3);
    const double slope_db =
        gain::gain_db_slope_form(pump_power, length_km, f.s_p);
    print_warnings(pon::range_warnings(mismatch.signal_um(),
                                       mismatch.pump_um(), std::nullopt,
                                       pump_power));
    if (format == "json") {
      nlohmann::json j{{"fiber", f.name},
                       {"delta_beta_per_m", g.delta_beta},
                       {"k_per_m", g.k},
                       {"g_squared_per_m2", g.g_squared},
                       {"regime", std::string(gain::to_string(g.regime))},
                       {"gain_linear", g.gain_linear},
                       {"gain_db", g.gain_db},
                       {"slope_form_db", slope_db}};
      std::cout << j.dump(2) << "\n";
      return;
    }
    std::cout << "fiber:       " << f.name << " (gamma " << fmt(f.gamma)
              << " W^-1 km^-1)\n"
              << "delta_beta:  " << fmt(g.delta_beta) << " m^-1\n"
              << "k:           " << fmt(g.k) << " m^-1\n"
              << "g_squared:   " << fmt(g.g_squared) << " m^-2\n"
              << "regime:      " << gain::to_string(g.regime) << "\n"
              << "gain:        " << fmt(g.gain_linear) << "\n"
              << "gain_db:     " << fmt(g.gain_db) << " dB\n"
              << "slope form:  " << fmt(slope_db) << " dB (S_p " << fmt(f.s_p)
              << " dB/(W km))\n";
  }
};

struct OdeVerifyCmd {
  FiberOpts fiber;
  MismatchOpts mismatch;
  double pump_power = 0.0;
  double length_km = 0.0;
  double seed_ratio = 1e-8;
  double tolerance = 0.01;
  long steps = 0;
  bool adaptive = false;
  double rel_tol = 1e-10;
  long max_steps = 0;
  CLI::Option* rel_tol_opt = nullptr;

  void attach(CLI::App* cmd) {
    fiber.attach(cmd);
    mismatch.attach(cmd);
    cmd->add_option("--pump-power", pump_power, "pump power, W")->required();
    cmd->add_option("--length", length_km, "fiber length, km")->required();
    cmd->add_option("--seed-ratio", seed_ratio,
                    "signal seed power as a fraction of the pump");
    cmd->add_option("--tolerance", tolerance,
                    "relative disagreement that still counts as a pass");
    cmd->add_option("--steps", steps, "fixed step count (default 4096)");
    cmd->add_flag("--adaptive", adaptive, "use the embedded adaptive pair");
    rel_tol_opt = cmd->add_option("--rel-tol", rel_tol,
                                  "adaptive relative tolerance");
    cmd->add_option("--max-steps", max_steps, "step budget");
  }

  int run(const ToolConfig& cfg, const std::string& format) const {
    if (!(seed_ratio > 0.0))
      throw InvalidInput("--seed-ratio must be positive");
    if (!(tolerance > 0.0)) throw InvalidInput("--tolerance must be positive");

    double gamma_w_m;
    FiberProfile f;
    if (*fiber.gamma_opt && fiber.gamma_w_km == 0.0) {
      gamma_w_m = 0.0;  // no nonlinearity at all: both answers are exactly 1
      f.name = "custom";
    } else {
      f = fiber.resolve(cfg);
      gamma_w_m = f.gamma_per_m();
    }
    const double length_m = length_km * 1e3;
    const double db =
        gamma_w_m > 0.0 ? mismatch.resolve(f, pump_power)
                        : (*mismatch.db_opt ? mismatch.delta_beta : 0.0);

    ode::OdeConfig ode_cfg = cfg.ode;
    if (adaptive || *rel_tol_opt) ode_cfg.method = ode::Method::AdaptiveRk45;
    if (*rel_tol_opt) ode_cfg.rel_tol = rel_tol;
    if (steps > 0) ode_cfg.step_m = length_m / static_cast<double>(steps);
    if (max_steps > 0) ode_cfg.max_steps = max_steps;

    const double analytic =
        gamma_w_m > 0.0
            ? gain::signal_gain(db, gamma_w_m, pump_power, length_m)
                  .gain_linear
            : 1.0;
    const double oracle = ode::gain_oracle(
        pump_power, seed_ratio * pump_power, gamma_w_m, db, length_m, ode_cfg);
    const double rel_err = std::abs(oracle - analytic) / analytic;
    const bool ok = rel_err <= tolerance;

    if (format == "json") {
      nlohmann::json j{{"analytic_gain", analytic},
                       {"ode_gain", oracle},
                       {"relative_error", rel_err},
                       {"tolerance", tolerance},
                       {"agreement", ok}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "analytic gain:  " << fmt(analytic) << " ("
                << fmt(10.0 * std::log10(analytic)) << " dB)\n"
                << "ode gain:       " << fmt(oracle) << " ("
                << fmt(10.0 * std::log10(oracle)) << " dB)\n"
                << "relative error: " << fmt(rel_err) << " (tolerance "
                << fmt(tolerance) << ")\n"
                << "agreement:      " << (ok ? "OK" : "FAILED") << "\n";
    }
    return ok ? 0 : 1;
  }
};

struct PulseCmd {
  FiberOpts fiber;
  MismatchOpts mismatch;
  double p0 = 0.0;
  std::string fm_text;
  double length_km = 0.0;
  double chirp = 0.0;
  int n_channels = 0;
  int n_links = 0;
  CLI::Option* p0_opt = nullptr;
  CLI::Option* fm_opt = nullptr;
  CLI::Option* ch_opt = nullptr;
  CLI::Option* links_opt = nullptr;

  void attach(CLI::App* cmd) {
    fiber.attach(cmd);
    mismatch.attach(cmd);
    p0_opt = cmd->add_option("--p0", p0, "peak pump power, W");
    fm_opt = cmd->add_option("--fm", fm_text,
                             "pump modulation frequency, e.g. 10GHz");
    cmd->add_option("--length", length_km, "fiber length, km")->required();
    cmd->add_option("--chirp", chirp, "linear chirp parameter C");
    ch_opt = cmd->add_option("--n-channels", n_channels,
                             "interleaved channels per link");
    links_opt = cmd->add_option("--n-links", n_links, "wavelength links");
  }

  void run(const ToolConfig& cfg, const std::string& format) const {
    const FiberProfile f = fiber.resolve(cfg);
    const double peak_w = *p0_opt ? p0 : cfg.pump.p0_w;
    const double omega =
        *fm_opt ? 2.0 * std::numbers::pi * parse_frequency_flag("--fm", fm_text)
                : cfg.pump.omega_m;
    const double length_m = length_km * 1e3;
    const double db = mismatch.resolve(f, peak_w);
    const pulse::PumpModulation mod{peak_w, omega};

    const double g0 = pulse::peak_gain_param(db, f.gamma_per_m(), peak_w);
    const double t0_s = pulse::pulse_width(db, f.gamma_per_m(), mod, length_m);
    const double a0 = pulse::pulse_amplitude(g0, length_m);

    pon::SpectralPlan plan = cfg.plan;
    if (*ch_opt) plan.n_channels = n_channels;
    if (*links_opt) plan.n_links = n_links;
    plan.validate();

    const double t0_ns = t0_s * 1e9;
    const double rate_channel = pon::bit_rate_channel(t0_ns);
    const double rate_link = pon::bit_rate_link(t0_ns, plan.n_channels);
    const double rate_core =
        pon::bit_rate_core(t0_ns, plan.n_links, plan.n_channels);
    const double spacing = pon::channel_spacing(plan);

    print_warnings(pon::range_warnings(mismatch.signal_um(),
                                       mismatch.pump_um(), plan.n_links,
                                       peak_w));
    if (format == "json") {
      nlohmann::json j{{"fiber", f.name},
                       {"delta_beta_per_m", db},
                       {"g0_per_m", g0},
                       {"t0_ps", t0_s * 1e12},
                       {"a0", a0},
                       {"chirp_c", chirp},
                       {"bit_rate_channel_gbit_s", rate_channel},
                       {"bit_rate_link_gbit_s", rate_link},
                       {"bit_rate_core_mbit_s", rate_core},
                       {"n_channels", plan.n_channels},
                       {"n_links", plan.n_links},
                       {"channel_spacing_um", spacing}};
      std::cout << j.dump(2) << "\n";
      return;
    }
    std::cout << "fiber:            " << f.name << "\n"
              << "delta_beta:       " << fmt(db) << " m^-1\n"
              << "g0:               " << fmt(g0) << " m^-1\n"
              << "T0:               " << fmt(t0_s * 1e12) << " ps\n"
              << "A0:               " << fmt(a0) << "\n"
              << "chirp C:          " << fmt(chirp) << "\n"
              << "rate per channel: " << fmt(rate_channel) << " Gbit/s\n"
              << "rate per link:    " << fmt(rate_link) << " Gbit/s ("
              << plan.n_channels << " channels)\n"
              << "rate per core:    " << fmt(rate_core) << " Mbit/s ("
              << plan.n_links << " links)\n"
              << "channel spacing:  " << fmt(spacing) << " um\n";
  }
};

struct CapacityCmd {
  int k = 0, n = 0, m = 0, w = 0;
  double d = 0.0, rho = 0.0;
  std::string slot_text, tlaser_text, ttx_text;
  CLI::Option *k_opt = nullptr, *n_opt = nullptr, *m_opt = nullptr,
              *w_opt = nullptr, *d_opt = nullptr, *rho_opt = nullptr,
              *slot_opt = nullptr, *tlaser_opt = nullptr, *ttx_opt = nullptr;

  void attach(CLI::App* cmd) {
    k_opt = cmd->add_option("--k", k, "tunable lasers");
    n_opt = cmd->add_option("--n", n, "router input ports");
    m_opt = cmd->add_option("--m", m, "router output ports");
    w_opt = cmd->add_option("--w", w, "stations per output");
    d_opt = cmd->add_option("--d", d, "feeder data rate, Gbit/s");
    slot_opt = cmd->add_option("--slot", slot_text,
                               "transmission slot, e.g. 100us");
    tlaser_opt = cmd->add_option("--tlaser", tlaser_text,
                                 "laser retuning time, e.g. 25us");
    rho_opt = cmd->add_option("--rho", rho, "utilization in [0, 1]");
    ttx_opt = cmd->add_option("--ttx", ttx_text,
                              "per-station transmission time, e.g. 100us");
  }

  void run(const ToolConfig& cfg, const std::string& format) const {
    pon::PonConfig pcfg = cfg.pon;
    if (*k_opt) pcfg.k_lasers = k;
    if (*n_opt) pcfg.n_in = n;
    if (*m_opt) pcfg.m_out = m;
    if (*w_opt) pcfg.w_users = w;
    if (*d_opt) pcfg.data_rate = d;
    if (*slot_opt) pcfg.slot_s = parse_duration_flag("--slot", slot_text);
    if (*tlaser_opt)
      pcfg.t_laser_s = parse_duration_flag("--tlaser", tlaser_text);
    if (*rho_opt) pcfg.rho = rho;
    if (*ttx_opt) pcfg.t_tx_s = parse_duration_flag("--ttx", ttx_text);

    const double bw = pon::bandwidth_per_user(pcfg);
    const double window_s = pon::service_window(pcfg);
    const double delay_s = pon::network_delay(pcfg);
    if (format == "json") {
      nlohmann::json j{{"bw_user_gbit_s", bw},
                       {"service_window_ms", window_s * 1e3},
                       {"delay_ms", delay_s * 1e3}};
      std::cout << j.dump(2) << "\n";
      return;
    }
    std::cout << "bandwidth per user: " << fmt(bw) << " Gbit/s\n"
              << "service window:     " << fmt(window_s * 1e3) << " ms\n"
              << "mean access delay:  " << fmt(delay_s * 1e3) << " ms\n";
  }
};

struct SweepCmd {
  std::string preset_id;
  std::string spec_path;
  std::string out_dir;
  std::string basename;
  int threads = 0;
  CLI::Option* preset_opt = nullptr;
  CLI::Option* spec_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* base_opt = nullptr;

  void attach(CLI::App* cmd) {
    preset_opt = cmd->add_option("--preset", preset_id,
                                 "built-in curve family, e.g. fig7");
    spec_opt = cmd->add_option("--spec", spec_path,
                               "sweep description JSON file");
    preset_opt->excludes(spec_opt);
    out_opt = cmd->add_option("--out", out_dir, "output directory");
    base_opt = cmd->add_option("--basename", basename,
                               "output file name without extension");
    cmd->add_option("--threads", threads,
                    "worker threads (0 = automatic; results are identical)");
  }

  void run(const ToolConfig& cfg, const std::string& format) const {
    if (!*preset_opt && !*spec_opt)
      throw InvalidInput("one of --preset or --spec is required");
    const sweep::SweepSpec spec = *preset_opt
                                      ? sweep::figure_preset(preset_id)
                                      : load_sweep_spec(spec_path);
    const sweep::CurveSet curves = sweep::run_sweep(spec, threads);
    const std::string dir = *out_opt ? out_dir : cfg.output.directory;
    const std::string base =
        *base_opt ? basename
                  : (!spec.preset.empty() ? spec.preset : spec.target);
    const csv::WrittenFiles files =
        csv::write_files(curves, dir, base, format, config_json(cfg));
    std::cout << "wrote " << files.table.string() << " ("
              << curves.rows.size() << " rows)\n";
    if (!files.metadata.empty())
      std::cout << "wrote " << files.metadata.string() << "\n";
  }
};

void run_presets() {
  for (const auto& id : sweep::preset_names()) {
    const sweep::SweepSpec spec = sweep::figure_preset(id);
    std::cout << id << ": " << spec.target << " vs " << spec.swept.name
              << " in [" << fmt(spec.swept.min) << ", " << fmt(spec.swept.max)
              << "] x" << spec.swept.steps;
    if (spec.series) {
      std::cout << ", series " << spec.series->name << " {";
      for (std::size_t i = 0; i < spec.series->values.size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << spec.series->values[i].label;
      }
      std::cout << "}";
    }
    std::cout << "\n";
  }
  std::cout << "targets for --spec:";
  for (const auto& name : sweep::target_names()) std::cout << " " << name;
  std::cout << "\n";
}

void run_errata() {
  std::cout << "corrections applied to the published formulation:\n";
  int index = 0;
  for (const Erratum& e : errata()) {
    std::cout << "\n" << ++index << ". " << e.topic << "\n"
              << "   printed:     " << e.printed << "\n"
              << "   implemented: " << e.implemented << "\n"
              << "   reason:      " << e.reason << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "parametric-amplifier and optical-access-network modeling tool"};
  app.set_version_flag("--version", std::string(tool_version));
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file")
      ->envname("OPANET_CONFIG");
  std::string format;
  CLI::Option* format_opt =
      app.add_option("--format", format, "output format: csv or json")
          ->check(CLI::IsMember({"csv", "json"}));

  GainCmd gain_cmd;
  gain_cmd.attach(app.add_subcommand("gain", "closed-form parametric gain"));
  OdeVerifyCmd ode_cmd;
  ode_cmd.attach(app.add_subcommand(
      "ode-verify", "check the closed form against the coupled-wave ODEs"));
  PulseCmd pulse_cmd;
  pulse_cmd.attach(app.add_subcommand(
      "pulse", "compressed-pulse parameters and bit rates"));
  CapacityCmd capacity_cmd;
  capacity_cmd.attach(app.add_subcommand(
      "capacity", "shared-access bandwidth, window, and delay"));
  SweepCmd sweep_cmd;
  sweep_cmd.attach(
      app.add_subcommand("sweep", "evaluate a curve family into files"));
  CLI::App* presets_cmd =
      app.add_subcommand("presets", "list built-in curve families");
  CLI::App* errata_cmd = app.add_subcommand(
      "errata", "print corrections applied to the published formulation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return 2;
  }

  try {
    const ToolConfig cfg =
        config_path.empty() ? default_config() : load_config(config_path);
    const std::string out_format =
        *format_opt ? format
                    : (app.got_subcommand("sweep") ? cfg.output.format
                                                   : std::string("text"));
    if (app.got_subcommand("gain")) {
      gain_cmd.run(cfg, out_format);
    } else if (app.got_subcommand("ode-verify")) {
      return ode_cmd.run(cfg, out_format);
    } else if (app.got_subcommand("pulse")) {
      pulse_cmd.run(cfg, out_format);
    } else if (app.got_subcommand("capacity")) {
      capacity_cmd.run(cfg, out_format);
    } else if (app.got_subcommand("sweep")) {
      sweep_cmd.run(cfg, out_format == "text" ? "csv" : out_format);
    } else if (app.got_subcommand(presets_cmd)) {
      run_presets();
    } else if (app.got_subcommand(errata_cmd)) {
      run_errata();
    }
    return 0;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    if (e.achieved_z() > 0.0)
      std::cerr << "reached z = " << fmt(e.achieved_z()) << " m\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
