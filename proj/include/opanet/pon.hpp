#pragma once

#include <optional>
#include <string>
#include <vector>

namespace opanet::pon {

// Access-network sharing parameters. Counts are dimensionless, times in
// seconds, the feeder data rate in Gbit/s.
struct PonConfig {
  int k_lasers = 16;       // tunable lasers at the head end
  int n_in = 16;           // input ports of the routing stage
  int m_out = 16;          // output ports of the routing stage
  int w_users = 256;       // stations sharing one output
  double data_rate = 2.5;  // feeder rate d, Gbit/s
  double slot_s = 100e-6;  // transmission slot T
  double t_laser_s = 25e-6;  // laser retuning time
  double rho = 0.8;          // utilization, in [0, 1]
  double t_tx_s = 100e-6;    // per-station transmission time

  void validate() const;
};

// Wavelength comb shared by the distribution links.
struct SpectralPlan {
  double lambda_start_um = 1.5;
  double lambda_end_um = 1.65;
  int n_links = 24;
  int n_channels = 16;  // time-interleaved channels per link

  void validate() const;
};

// Average bandwidth one station sees:
//   BW = K * d * T / (N * M * (T + T_laser)),  in Gbit/s.
// The retuning time T_laser taxes every slot. T + T_laser must be positive.
double bandwidth_per_user(const PonConfig& cfg);

// Time to serve every station once: T_window = (N*M/K) * (T + T_laser), s.
double service_window(const PonConfig& cfg);

// Mean access delay: rho * (W/2) * (T_tx + T_laser), s.
double network_delay(const PonConfig& cfg);

// Channel spacing when the band is split evenly: (end - start)/n_links, um.
double channel_spacing(const SpectralPlan& plan);

// Bit rates carried by return-to-zero pulses of width t0 (in ns):
//   per channel: 0.25 / t0                          Gbit/s
//   per link:    0.25 * n_channels / t0             Gbit/s
//   whole core:  250 * n_links * n_channels / t0    Mbit/s
double bit_rate_channel(double t0_ns);
double bit_rate_link(double t0_ns, int n_channels);
double bit_rate_core(double t0_ns, int n_links, int n_channels);

// Non-fatal advisories when parameters leave the ranges the model was
// exercised over (signal 1.5-1.65 um, pump 1.4-1.55 um, at most 24 links,
// pump power 0.5-1.4 W). Empty when everything is in range.
std::vector<std::string> range_warnings(std::optional<double> lambda_s_um,
                                        std::optional<double> lambda_p_um,
                                        std::optional<int> n_links,
                                        std::optional<double> p_pump_w);

}  // namespace opanet::pon
