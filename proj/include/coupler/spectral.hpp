#ifndef COUPLER_SPECTRAL_HPP
#define COUPLER_SPECTRAL_HPP

#include <complex>

#include "coupler/pulses.hpp"

namespace coupler {

// Elastic scattering of a shaped pulse: each spectral component of the
// envelope is multiplied by the atom's coherent transmission amplitude
// t(Delta) = 1 - 2G / (1 - 2 i Delta / Gamma), with the spectrum defined
// through E~(Delta) = integral E(t) exp(i Delta t) dt. The input grid must
// extend at least 20/Gamma on both sides of t = 0; internally the samples
// are zero-padded to a power of two with the same margin so the circular
// transform cannot wrap the response tail into the pulse.
PulseEnvelope scatter_pulse(const PulseEnvelope& env, double g, double gamma,
                            double carrier_detuning = 0.0);

struct ExpDecomposition {
  std::complex<double> c_rise;   // coefficient of sqrt(G) e^{+Gamma t/2}, t < 0
  std::complex<double> c_decay;  // coefficient of sqrt(G) e^{-Gamma t/2}, t > 0
  double residual_energy_fraction;
};

// Least-squares projection onto the orthonormal rising/decaying exponential
// pair with rate Gamma/2 on either side of t = 0.
ExpDecomposition decompose_exponentials(const PulseEnvelope& env, double gamma);

struct EnergyBudget {
  double in_mode_energy_fraction;
  double out_of_mode_fraction;
  double matched_ideal_fraction;  // (1-G)^2 + G^2, reference for a matched pulse
};

EnergyBudget energy_budget(const PulseEnvelope& in, const PulseEnvelope& out,
                           double g);

}  // namespace coupler

#endif  // COUPLER_SPECTRAL_HPP
