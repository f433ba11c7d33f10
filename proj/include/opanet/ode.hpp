#pragma once

#include <complex>

namespace opanet::ode {

using Complex = std::complex<double>;

// Complex field amplitudes of pump, signal, and idler in sqrt(W), plus the
// position along the fiber. |a|^2 is optical power; the total is conserved
// by the lossless model (checked by tests, not enforced here).
struct ThreeWaveState {
  Complex a_p{0.0, 0.0};
  Complex a_s{0.0, 0.0};
  Complex a_i{0.0, 0.0};
  double z = 0.0;  // m

  double total_power() const {
    return std::norm(a_p) + std::norm(a_s) + std::norm(a_i);
  }
};

enum class Method {
  FixedRk4,      // classical fourth-order steps, bit-reproducible
  AdaptiveRk45,  // embedded 5(4) pair with step control
};

struct OdeConfig {
  Method method = Method::FixedRk4;
  // Fixed method: step size in m; <= 0 selects length/4096.
  double step_m = 0.0;
  // Adaptive method: relative tolerance per step.
  double rel_tol = 1e-10;
  // Either method refuses to take more steps than this.
  long max_steps = 1 << 22;

  void validate() const;
};

// Integrates the full nonlinear three-wave interaction (self- and cross-phase
// modulation plus the four-wave mixing exchange) from the initial state over
// `length` meters and returns the final state. gamma in W^-1 m^-1 (>= 0),
// delta_beta in m^-1, length in m (>= 0). Throws NumericalError carrying the
// position reached if the step budget runs out or the state leaves the
// representable range.
ThreeWaveState propagate(const ThreeWaveState& initial, double gamma_w_m,
                         double delta_beta, double length_m,
                         const OdeConfig& config = {});

// Convenience wrapper: seeds a real pump of p_pump W and a real signal of
// p_signal0 W (> 0), no idler, propagates, and reports |a_s(L)|^2 / p_signal0.
// This is the independent check the closed-form gain is validated against.
double gain_oracle(double p_pump_w, double p_signal0_w, double gamma_w_m,
                   double delta_beta, double length_m,
                   const OdeConfig& config = {});

}  // namespace opanet::ode
