#ifndef COUPLER_CAVITY_HPP
#define COUPLER_CAVITY_HPP

#include "coupler/pulses.hpp"

namespace coupler {

// Single-mode input-output model of an empty two-mirror resonator. kappa is
// the total energy decay rate (intensity ~ e^{-kappa t}); it splits between
// the mirrors in proportion to their power transmissions.
struct CavityParams {
  double r1 = 1.0;  // power reflectivity of the input mirror, (0, 1]
  double r2 = 1.0;  // power reflectivity of the back mirror, (0, 1]
  double kappa = 1.0;     // 1/s
  double detuning = 0.0;  // rad/s

  static CavityParams from_decay_time(double r1, double r2,
                                      double intensity_decay_time,
                                      double detuning = 0.0);
  void validate() const;
};

struct CavityRates {
  double kappa;
  double kappa1;
  double kappa2;
  double coverage;  // kappa1 / kappa, the solid-angle analog
};

CavityRates cavity_rates(const CavityParams& params);

struct CavityResponse {
  PulseEnvelope reflected;    // s_out = -s_in + sqrt(kappa1) a
  PulseEnvelope intracavity;  // a(t)
};

// Integrates da/dt = (i Delta - kappa/2) a + sqrt(kappa1) s_in with a = 0 at
// the start of the grid, classic fourth-order stepping over the samples.
CavityResponse simulate_reflection(const PulseEnvelope& pulse,
                                   const CavityParams& params);

// |a|^2 at the pulse cut-off for a flux-normalized input, times an optional
// spatial mode-match factor.
double storage_efficiency(const PulseEnvelope& pulse, const CavityParams& params,
                          double eta_spatial = 1.0);

}  // namespace coupler

#endif  // COUPLER_CAVITY_HPP
