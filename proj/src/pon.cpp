#include "opanet/pon.hpp"

#include <sstream>

#include "opanet/errors.hpp"

namespace opanet::pon {

void PonConfig::validate() const {
  if (k_lasers < 1 || n_in < 1 || m_out < 1 || w_users < 1)
    throw InvalidInput("laser, port, and station counts must be >= 1");
  if (!(data_rate > 0.0)) throw InvalidInput("data rate must be positive");
  if (!(slot_s >= 0.0) || !(t_laser_s >= 0.0) || !(t_tx_s >= 0.0))
    throw InvalidInput("slot, retuning, and transmission times must be >= 0");
  if (!(rho >= 0.0 && rho <= 1.0))
    throw InvalidInput("utilization must lie in [0, 1]");
}

void SpectralPlan::validate() const {
  if (!(lambda_start_um > 0.0) || !(lambda_end_um > lambda_start_um))
    throw InvalidInput("spectral band must satisfy 0 < start < end");
  if (n_links < 1 || n_channels < 1)
    throw InvalidInput("link and channel counts must be >= 1");
}

double bandwidth_per_user(const PonConfig& cfg) {
  cfg.validate();
  if (!(cfg.slot_s + cfg.t_laser_s > 0.0))
    throw InvalidInput("slot time plus retuning time must be positive");
  const double cycle = cfg.slot_s + cfg.t_laser_s;
  return cfg.k_lasers * cfg.data_rate * cfg.slot_s /
         (static_cast<double>(cfg.n_in) * cfg.m_out * cycle);
}

double service_window(const PonConfig& cfg) {
  cfg.validate();
  return static_cast<double>(cfg.n_in) * cfg.m_out / cfg.k_lasers *
         (cfg.slot_s + cfg.t_laser_s);
}

double network_delay(const PonConfig& cfg) {
  cfg.validate();
  return cfg.rho * (cfg.w_users / 2.0) * (cfg.t_tx_s + cfg.t_laser_s);
}

double channel_spacing(const SpectralPlan& plan) {
  plan.validate();
  return (plan.lambda_end_um - plan.lambda_start_um) / plan.n_links;
}

namespace {
void check_t0(double t0_ns) {
  if (!(t0_ns > 0.0)) throw InvalidInput("pulse width must be positive (ns)");
}
}  // namespace

double bit_rate_channel(double t0_ns) {
  check_t0(t0_ns);
  return 0.25 / t0_ns;
}

double bit_rate_link(double t0_ns, int n_channels) {
  check_t0(t0_ns);
  if (n_channels < 1) throw InvalidInput("channel count must be >= 1");
  return 0.25 * n_channels / t0_ns;
}

double bit_rate_core(double t0_ns, int n_links, int n_channels) {
  check_t0(t0_ns);
  if (n_links < 1 || n_channels < 1)
    throw InvalidInput("link and channel counts must be >= 1");
  return 250.0 * n_links * n_channels / t0_ns;
}

std::vector<std::string> range_warnings(std::optional<double> lambda_s_um,
                                        std::optional<double> lambda_p_um,
                                        std::optional<int> n_links,
                                        std::optional<double> p_pump_w) {
  std::vector<std::string> warnings;
  auto warn = [&warnings](const std::string& text) {
    warnings.push_back("warning: " + text);
  };
  if (lambda_s_um && (*lambda_s_um < 1.5 || *lambda_s_um > 1.65)) {
    std::ostringstream msg;
    msg << "signal wavelength " << *lambda_s_um
        << " um is outside the modeled range [1.5, 1.65] um";
    warn(msg.str());
  }
  if (lambda_p_um && (*lambda_p_um < 1.4 || *lambda_p_um > 1.55)) {
    std::ostringstream msg;
    msg << "pump wavelength " << *lambda_p_um
        << " um is outside the modeled range [1.4, 1.55] um";
    warn(msg.str());
  }
  if (n_links && *n_links > 24) {
    std::ostringstream msg;
    msg << "link count " << *n_links << " exceeds the modeled maximum of 24";
    warn(msg.str());
  }
  if (p_pump_w && (*p_pump_w < 0.5 || *p_pump_w > 1.4)) {
    std::ostringstream msg;
    msg << "pump power " << *p_pump_w
        << " W is outside the modeled range [0.5, 1.4] W";
    warn(msg.str());
  }
  return warnings;
}

}  // namespace opanet::pon
