#ifndef COUPLER_CW_HPP
#define COUPLER_CW_HPP

#include <complex>
#include <optional>
#include <vector>

#include "coupler/constants.hpp"

namespace coupler {

// Scalar state shared by the continuous-wave and pulse interaction
// formulas: coupling efficiency G, spontaneous-emission rate Gamma,
// detuning Delta and transition frequency omega0 (all angular, rad/s).
struct CouplingParams {
  double g = 0.0;
  double gamma = 1.0;
  double delta = 0.0;
  double omega0 = 1.0;

  void validate() const;
};

// Coherent amplitude left in the incident mode after the atom,
// t = 1 - 2 G / (1 - 2 i Delta / Gamma); 1 with no atom.
std::complex<double> transmission_amplitude(double g, double gamma, double delta);
std::complex<double> transmission_amplitude(const CouplingParams& p);

// Phase of the superposition of incident and coherently scattered light,
// in (-pi, pi]. Exactly 0 for G < 1/2 and pi for G > 1/2 on resonance;
// nullopt for the singular point G = 1/2, Delta = 0.
std::optional<double> phase_shift(const CouplingParams& p);

// Scattered power over incident power, 4G / ((1 + 4 Delta^2/Gamma^2)(1 + s)).
double scattering_ratio(const CouplingParams& p, double s = 0.0);

struct TransmittedFraction {
  double value;
  bool clamped;  // set when the (G, omega) combination forced clamping
};

// T = 1 - 4 G (1 - omega / (8 pi / 3)), clamped to [0, 1].
TransmittedFraction transmitted_fraction(double g, double omega);

// S = G * 8 P / (hbar omega0 Gamma) / (1 + 4 Delta^2 / Gamma^2).
double saturation_parameter(double power_w, const CouplingParams& p,
                            double hbar = hbar_si);

// Steady-state photon scattering rate, (Gamma / 2) s / (1 + s).
double fluorescence_rate(double s, double gamma);

// Coupling efficiency implied by the drive power at unit saturation.
double g_from_power_at_s1(double p_at_s1, const CouplingParams& p,
                          double hbar = hbar_si);

struct SaturationDataset {
  std::vector<double> power_w;
  std::vector<double> rate_per_s;
  double gamma = 1.0;   // rad/s
  double delta = 0.0;   // rad/s
  double omega0 = 1.0;  // rad/s
  double background = 0.0;  // known/initial background rate

  void validate() const;
};

struct SaturationFitResult {
  double g_fit = 0.0;
  double g_err = 0.0;
  double p_at_s1 = 0.0;  // watts
  double p_err = 0.0;
  double amplitude = 0.0;  // counts/s at full saturation
  double amplitude_err = 0.0;
  double background = 0.0;
  double background_err = 0.0;
  double residual_norm = 0.0;  // sqrt(chi^2)
  int iterations = 0;
};

// Damped least squares of rate = A S/(1+S) + B with S = P / P1, run from
// five log-spaced starts in P1; reports covariance-based standard errors.
SaturationFitResult fit_saturation(const SaturationDataset& data,
                                   double hbar = hbar_si);

// Oscillator-strength correction, default factor 3.
double multilevel_correction(double g_two_level, double factor = 3.0);

}  // namespace coupler

#endif  // COUPLER_CW_HPP
