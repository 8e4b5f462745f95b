#ifndef COUPLER_PULSE_IO_HPP
#define COUPLER_PULSE_IO_HPP

#include <string>
#include <vector>

#include "coupler/cavity.hpp"
#include "coupler/pulses.hpp"

namespace coupler {

// Envelope CSV: header `t_s,amplitude` for real envelopes, or
// `t_s,re_amplitude,im_amplitude` for complex ones. The time column must be
// uniform to 1e-6 relative jitter.
PulseEnvelope read_envelope_csv(const std::string& path);
void write_envelope_csv(const PulseEnvelope& env, const std::string& path);

struct Histogram {
  double t0 = 0.0;  // centre of the first bin
  double bin_width = 1.0;
  std::vector<double> counts;
};

// Histogram CSV: header `t_s,counts`, uniform bin centres.
Histogram read_histogram_csv(const std::string& path);

// Trace CSV: `t_s,re_in,im_in,re_out,im_out,re_a,im_a`.
void write_cavity_trace_csv(const PulseEnvelope& input,
                            const CavityResponse& response,
                            const std::string& path);

}  // namespace coupler

#endif  // COUPLER_PULSE_IO_HPP
