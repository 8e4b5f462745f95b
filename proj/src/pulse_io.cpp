#include "coupler/pulse_io.hpp"

#include <cmath>
#include <complex>

#include "coupler/csvio.hpp"
#include "coupler/errors.hpp"

namespace coupler {

namespace {

using cd = std::complex<double>;

void check_uniform(const std::vector<std::vector<double>>& rows,
                   const std::string& path, double* t0, double* dt) {
  if (rows.size() < 2)
    throw ParseError(path + ": need at least two samples");
  *t0 = rows[0][0];
  *dt = (rows.back()[0] - rows[0][0]) / static_cast<double>(rows.size() - 1);
  if (*dt <= 0.0) throw ParseError(path + ": time column must increase");
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double step = rows[i + 1][0] - rows[i][0];
    if (std::abs(step - *dt) > 1e-6 * (*dt))
      throw ParseError(path + ":" + std::to_string(i + 3) +
                       ": non-uniform time step");
  }
}

}  // namespace

PulseEnvelope read_envelope_csv(const std::string& path) {
  const csv::Table table = csv::read_table(path);
  const bool real_fmt =
      table.header == std::vector<std::string>{"t_s", "amplitude"};
  const bool complex_fmt = table.header == std::vector<std::string>{
                                               "t_s", "re_amplitude", "im_amplitude"};
  if (!real_fmt && !complex_fmt)
    throw ParseError(path +
                     ":1: expected header 't_s,amplitude' or "
                     "'t_s,re_amplitude,im_amplitude'");
  PulseEnvelope env;
  check_uniform(table.rows, path, &env.t0, &env.dt);
  env.samples.reserve(table.rows.size());
  for (const auto& row : table.rows)
    env.samples.emplace_back(row[1], complex_fmt ? row[2] : 0.0);
  env.validate();
  return env;
}

void write_envelope_csv(const PulseEnvelope& env, const std::string& path) {
  env.validate();
  bool complex_fmt = false;
  for (const cd& v : env.samples)
    if (v.imag() != 0.0) {
      complex_fmt = true;
      break;
    }
  std::vector<std::vector<double>> rows;
  rows.reserve(env.size());
  for (std::size_t i = 0; i < env.size(); ++i) {
    if (complex_fmt)
      rows.push_back({env.time(i), env.samples[i].real(), env.samples[i].imag()});
    else
      rows.push_back({env.time(i), env.samples[i].real()});
  }
  csv::write_table(path, complex_fmt ? "t_s,re_amplitude,im_amplitude" : "t_s,amplitude",
                   rows);
}

Histogram read_histogram_csv(const std::string& path) {
  const csv::Table table = csv::read_table(path, "t_s,counts");
  Histogram hist;
  check_uniform(table.rows, path, &hist.t0, &hist.bin_width);
  hist.counts.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i][1] < 0.0)
      throw ParseError(path + ":" + std::to_string(i + 2) + ": negative count");
    hist.counts.push_back(table.rows[i][1]);
  }
  return hist;
}

void write_cavity_trace_csv(const PulseEnvelope& input,
                            const CavityResponse& response,
                            const std::string& path) {
  const std::size_t n = input.size();
  if (response.reflected.size() != n || response.intracavity.size() != n)
    throw DomainError("write_cavity_trace_csv: trace length mismatch");
  std::vector<std::vector<double>> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back({input.time(i), input.samples[i].real(), input.samples[i].imag(),
                    response.reflected.samples[i].real(),
                    response.reflected.samples[i].imag(),
                    response.intracavity.samples[i].real(),
                    response.intracavity.samples[i].imag()});
  }
  csv::write_table(path, "t_s,re_in,im_in,re_out,im_out,re_a,im_a", rows);
}

}  // namespace coupler
