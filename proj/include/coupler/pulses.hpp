#ifndef COUPLER_PULSES_HPP
#define COUPLER_PULSES_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace coupler {

// Sampled field envelope on a uniform time grid starting at t0.
struct PulseEnvelope {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<std::complex<double>> samples;

  std::size_t size() const { return samples.size(); }
  double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
  double t_end() const { return time(samples.empty() ? 0 : samples.size() - 1); }

  void validate() const;

  // Trapezoid integral of |E|^2 dt.
  double energy() const;
};

// Rising exponential e^{Gamma t / 2} for t < 0, zero afterwards; a sample
// falling exactly on t = 0 takes the midpoint value 1/2.
PulseEnvelope ideal_envelope(double t0, double dt, std::size_t n, double gamma);

// Overlap of the envelope with the rising exponential of rate Gamma/2,
// cut off at t = 0. The ideal envelope's norm enters analytically as
// 1/Gamma, so the caller's grid only has to resolve its own pulse.
double temporal_overlap(const PulseEnvelope& env, double gamma);

struct ShiftedOverlap {
  double eta;
  double shift;  // cut-off time of the best-matching ideal envelope
};

// Scans the ideal envelope's cut-off over the pulse grid and refines the
// best alignment; use when the pulse's own t = 0 is arbitrary.
ShiftedOverlap temporal_overlap_best_shift(const PulseEnvelope& env, double gamma);

struct HistogramEnvelope {
  PulseEnvelope envelope;
  std::size_t clamped_bins = 0;  // bins where background exceeded the counts
};

// Square root of background-subtracted counts per bin.
HistogramEnvelope envelope_from_histogram(const std::vector<double>& counts,
                                          double bin_width, double t0,
                                          double background = 0.0);

struct AomDrive {
  double voltage;
  double optical_power;  // relative to the t = 0 maximum
};

// Drive waveform arcsin(e^{t/(2 tau)}) sin(omega_rf t) for t <= 0; the
// first-order diffraction efficiency sin^2 of the envelope then yields an
// optical power rising exactly as e^{t/tau}. Cut off for t > 0.
AomDrive aom_drive(double t, double tau, double omega_rf);

// P_a = G * eta_t^2.
double absorption_probability(double g, double eta_t);

}  // namespace coupler

#endif  // COUPLER_PULSES_HPP
