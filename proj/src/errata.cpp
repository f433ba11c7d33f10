#include "opanet/errata.hpp"

namespace opanet {

const std::array<Erratum, 4>& errata() {
  static const std::array<Erratum, 4> entries = {{
      {
          "total phase mismatch",
          "k = delta_beta + gamma*P",
          "k = delta_beta + 2*gamma*P",
          "only the factor-two form makes (gamma*P)^2 - k^2/4 equal "
          "-delta_beta*(delta_beta/4 + gamma*P), the expansion the gain band "
          "(-4*gamma*P, 0) and the peak-gain results both rely on; "
          "physically the pump contributes 2*gamma*P of nonlinear mismatch "
          "through self- and cross-phase modulation",
      },
      {
          "coupled-wave driving terms",
          "dA_s/dz and dA_i/dz driven by A_i*A_p^2 and A_s*A_p^2 "
          "(no conjugate)",
          "driven by conj(A_i)*A_p^2 and conj(A_s)*A_p^2",
          "without the conjugate on the partner wave the total power "
          "|A_p|^2 + |A_s|^2 + |A_i|^2 is not conserved by the lossless "
          "equations, and the small-signal solution does not reduce to the "
          "closed-form gain",
      },
      {
          "peak gain parameter",
          "g0 = sqrt(-delta_beta^2 + 4*delta_beta*gamma*P0)/2",
          "g0 = sqrt(-delta_beta*(delta_beta/4 + gamma*P0))",
          "the printed radicand is negative everywhere in the gain band "
          "(delta_beta < 0 makes both terms negative), so it never yields a "
          "real width; the implemented form is the gain parameter evaluated "
          "at the pump peak and is positive exactly inside the band",
      },
      {
          "per-user bandwidth denominator",
          "BW = K*d*T / (N*M*(d*T + T_laser))",
          "BW = K*d*T / (N*M*(T + T_laser))",
          "the printed denominator adds a bit count (d*T) to a time "
          "(T_laser); the corrected slot-plus-retuning cycle has consistent "
          "units, reproduces the worked example figures, and satisfies "
          "BW * T_window = d * T",
      },
  }};
  return entries;
}

}  // namespace opanet
