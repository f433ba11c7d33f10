#include "opanet/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opanet/errors.hpp"

namespace opanet::ode {
namespace {

struct Vec3 {
  Complex p, s, i;
};

Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a.p + b.p, a.s + b.s, a.i + b.i};
}

Vec3 operator*(double c, const Vec3& v) { return {c * v.p, c * v.s, c * v.i}; }

// Lossless three-wave interaction. Each wave sees its own self-phase
// modulation, cross-phase modulation from the other two waves (twice as
// strong), and the four-wave mixing exchange: the pump pair scatters into
// signal + idler and back, with the linear mismatch delta_beta carried by
// the rotating exponential. The conjugations are what make
// |a_p|^2 + |a_s|^2 + |a_i|^2 invariant.
Vec3 derivative(double z, const Vec3& y, double gamma, double delta_beta) {
  const double pp = std::norm(y.p);
  const double ps = std::norm(y.s);
  const double pi = std::norm(y.i);
  const Complex mix = std::polar(1.0, delta_beta * z);
  const Complex ig(0.0, gamma);
  return {
      ig * ((pp + 2.0 * (ps + pi)) * y.p +
            2.0 * y.s * y.i * std::conj(y.p) * mix),
      ig * ((ps + 2.0 * (pp + pi)) * y.s +
            std::conj(y.i) * y.p * y.p * std::conj(mix)),
      ig * ((pi + 2.0 * (pp + ps)) * y.i +
            std::conj(y.s) * y.p * y.p * std::conj(mix)),
  };
}

bool finite(const Vec3& y) {
  return std::isfinite(y.p.real()) && std::isfinite(y.p.imag()) &&
         std::isfinite(y.s.real()) && std::isfinite(y.s.imag()) &&
         std::isfinite(y.i.real()) && std::isfinite(y.i.imag());
}

Vec3 rk4_step(double z, const Vec3& y, double h, double gamma, double db) {
  const Vec3 k1 = derivative(z, y, gamma, db);
  const Vec3 k2 = derivative(z + 0.5 * h, y + (0.5 * h) * k1, gamma, db);
  const Vec3 k3 = derivative(z + 0.5 * h, y + (0.5 * h) * k2, gamma, db);
  const Vec3 k4 = derivative(z + h, y + h * k3, gamma, db);
  return y + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
}

Vec3 fixed_rk4(Vec3 y, double z0, double length, double gamma, double db,
               double step_m, long max_steps) {
  long n = 4096;  // default resolution when no step is requested
  if (step_m > 0.0) n = static_cast<long>(std::ceil(length / step_m));
  n = std::max<long>(n, 1);
  if (n > max_steps)
    throw NumericalError("fixed-step propagation needs " + std::to_string(n) +
                             " steps but max_steps is " +
                             std::to_string(max_steps),
                         z0);
  const double h = length / static_cast<double>(n);
  for (long i = 0; i < n; ++i) {
    const double z = z0 + h * static_cast<double>(i);
    y = rk4_step(z, y, h, gamma, db);
    if (!finite(y))
      throw NumericalError("propagation left the representable range", z + h);
  }
  return y;
}

// Dormand-Prince 5(4) coefficients.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Difference between the 5th and the embedded 4th order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

double max_abs(const Vec3& v) {
  return std::max({std::abs(v.p), std::abs(v.s), std::abs(v.i)});
}

Vec3 adaptive_rk45(Vec3 y, double z0, double length, double gamma, double db,
                   double rel_tol, long max_steps) {
  const double amp_floor = 1e-12 * (1.0 + max_abs(y));
  double z = z0;
  const double z_end = z0 + length;
  double h = length / 64.0;
  long attempts = 0;
  while (z < z_end) {
    if (++attempts > max_steps)
      throw NumericalError("adaptive propagation exhausted " +
                               std::to_string(max_steps) + " step attempts",
                           z);
    h = std::min(h, z_end - z);
    if (!(z + h > z))
      throw NumericalError("adaptive step size underflowed", z);

    const Vec3 k1 = derivative(z, y, gamma, db);
    const Vec3 k2 = derivative(z + a21 * h, y + (h * a21) * k1, gamma, db);
    const Vec3 k3 = derivative(z + 0.3 * h,
                               y + (h * a31) * k1 + (h * a32) * k2, gamma, db);
    const Vec3 k4 =
        derivative(z + 0.8 * h,
                   y + (h * a41) * k1 + (h * a42) * k2 + (h * a43) * k3, gamma,
                   db);
    const Vec3 k5 = derivative(z + (8.0 / 9.0) * h,
                               y + (h * a51) * k1 + (h * a52) * k2 +
                                   (h * a53) * k3 + (h * a54) * k4,
                               gamma, db);
    const Vec3 k6 = derivative(z + h,
                               y + (h * a61) * k1 + (h * a62) * k2 +
                                   (h * a63) * k3 + (h * a64) * k4 +
                                   (h * a65) * k5,
                               gamma, db);
    const Vec3 y5 = y + (h * b1) * k1 + (h * b3) * k3 + (h * b4) * k4 +
                    (h * b5) * k5 + (h * b6) * k6;
    const Vec3 k7 = derivative(z + h, y5, gamma, db);
    const Vec3 err = (h * e1) * k1 + (h * e3) * k3 + (h * e4) * k4 +
                     (h * e5) * k5 + (h * e6) * k6 + (h * e7) * k7;

    double ratio = 0.0;
    if (finite(y5)) {
      auto component = [&](const Complex& e, const Complex& a,
                           const Complex& b) {
        const double scale =
            rel_tol * std::max({std::abs(a), std::abs(b), amp_floor});
        return std::abs(e) / scale;
      };
      ratio = std::max({component(err.p, y.p, y5.p),
                        component(err.s, y.s, y5.s),
                        component(err.i, y.i, y5.i)});
    } else {
      ratio = 1e6;  // force a rejection and a much smaller step
    }

    if (ratio <= 1.0) {
      y = y5;
      z += h;
    }
    const double factor =
        ratio > 0.0 ? 0.9 * std::pow(ratio, -0.2) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
  }
  return y;
}

}  // namespace

void OdeConfig::validate() const {
  if (!std::isfinite(step_m)) throw InvalidInput("ode step must be finite");
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw InvalidInput("ode relative tolerance must lie in (0, 1)");
  if (max_steps < 1) throw InvalidInput("ode max_steps must be >= 1");
}

ThreeWaveState propagate(const ThreeWaveState& initial, double gamma_w_m,
                         double delta_beta, double length_m,
                         const OdeConfig& config) {
  config.validate();
  if (!(gamma_w_m >= 0.0)) throw InvalidInput("gamma must be >= 0 (W^-1 m^-1)");
  if (!std::isfinite(delta_beta))
    throw InvalidInput("delta_beta must be finite");
  if (!(length_m >= 0.0)) throw InvalidInput("length must be >= 0 m");
  if (length_m == 0.0) return initial;

  Vec3 y{initial.a_p, initial.a_s, initial.a_i};
  if (config.method == Method::FixedRk4)
    y = fixed_rk4(y, initial.z, length_m, gamma_w_m, delta_beta, config.step_m,
                  config.max_steps);
  else
    y = adaptive_rk45(y, initial.z, length_m, gamma_w_m, delta_beta,
                      config.rel_tol, config.max_steps);
  return {y.p, y.s, y.i, initial.z + length_m};
}

double gain_oracle(double p_pump_w, double p_signal0_w, double gamma_w_m,
                   double delta_beta, double length_m,
                   const OdeConfig& config) {
  if (!(p_pump_w >= 0.0)) throw InvalidInput("pump power must be >= 0 W");
  if (!(p_signal0_w > 0.0))
    throw InvalidInput("seed signal power must be positive");
  ThreeWaveState state;
  state.a_p = Complex(std::sqrt(p_pump_w), 0.0);
  state.a_s = Complex(std::sqrt(p_signal0_w), 0.0);
  const ThreeWaveState out =
      propagate(state, gamma_w_m, delta_beta, length_m, config);
  return std::norm(out.a_s) / p_signal0_w;
}

}  // namespace opanet::ode
