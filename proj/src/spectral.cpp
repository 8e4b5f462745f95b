#include "coupler/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <vector>

#include "coupler/constants.hpp"
#include "coupler/cw.hpp"
#include "coupler/errors.hpp"
#include "coupler/numerics.hpp"

namespace coupler {

namespace {

using cd = std::complex<double>;

// FFTW plan creation is not thread-safe; executing distinct plans is.
std::mutex fftw_plan_mutex;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void run_fft(std::vector<cd>& data, int sign) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()),
                            reinterpret_cast<fftw_complex*>(data.data()),
                            reinterpret_cast<fftw_complex*>(data.data()), sign,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    fftw_destroy_plan(plan);
  }
}

}  // namespace

PulseEnvelope scatter_pulse(const PulseEnvelope& env, double g, double gamma,
                            double carrier_detuning) {
  env.validate();
  if (!std::isfinite(g) || g < 0.0 || g > 1.0)
    throw DomainError("scatter_pulse: G must lie in [0, 1]");
  if (!std::isfinite(gamma) || gamma <= 0.0)
    throw DomainError("scatter_pulse: Gamma must be positive");
  const double margin = 20.0 / gamma;
  if (env.t0 > -margin || env.t_end() < margin)
    throw DomainError(
        "scatter_pulse: envelope must span at least 20/Gamma on both sides "
        "of t = 0");

  const std::size_t n = env.size();
  const std::size_t tail = static_cast<std::size_t>(std::ceil(margin / env.dt));
  const std::size_t n_fft = next_pow2(n + tail);

  std::vector<cd> buf(n_fft, cd(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) buf[i] = env.samples[i];

  // spectrum with the e^{+i Delta t} convention
  run_fft(buf, FFTW_BACKWARD);

  const double d_delta = two_pi / (static_cast<double>(n_fft) * env.dt);
  for (std::size_t k = 0; k < n_fft; ++k) {
    const double idx = (k <= n_fft / 2)
                           ? static_cast<double>(k)
                           : static_cast<double>(k) - static_cast<double>(n_fft);
    const double delta = idx * d_delta + carrier_detuning;
    buf[k] *= transmission_amplitude(g, gamma, delta);
  }

  run_fft(buf, FFTW_FORWARD);
  const double inv_n = 1.0 / static_cast<double>(n_fft);

  PulseEnvelope out{env.t0, env.dt, std::vector<cd>(n)};
  for (std::size_t i = 0; i < n; ++i) out.samples[i] = buf[i] * inv_n;
  return out;
}

ExpDecomposition decompose_exponentials(const PulseEnvelope& env, double gamma) {
  env.validate();
  if (!std::isfinite(gamma) || gamma <= 0.0)
    throw DomainError("decompose_exponentials: Gamma must be positive");
  if (env.t0 >= 0.0 || env.t_end() <= 0.0)
    throw DomainError("decompose_exponentials: grid must straddle t = 0");

  const double root_gamma = std::sqrt(gamma);
  const double half_tol = 1e-9 * env.dt;
  const std::size_t n = env.size();
  std::vector<cd> rise(n), decay(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = env.time(i);
    double b_rise = 0.0, b_decay = 0.0;
    if (std::abs(t) <= half_tol) {
      b_rise = b_decay = 0.5;
    } else if (t < 0.0) {
      b_rise = std::exp(0.5 * gamma * t);
    } else {
      b_decay = std::exp(-0.5 * gamma * t);
    }
    rise[i] = root_gamma * b_rise * env.samples[i];
    decay[i] = root_gamma * b_decay * env.samples[i];
  }

  ExpDecomposition out{};
  out.c_rise = numerics::trapezoid(std::span<const cd>(rise), env.dt);
  out.c_decay = numerics::trapezoid(std::span<const cd>(decay), env.dt);
  const double energy = env.energy();
  if (energy > 0.0) {
    const double explained = std::norm(out.c_rise) + std::norm(out.c_decay);
    out.residual_energy_fraction = std::max(0.0, (energy - explained) / energy);
  } else {
    out.residual_energy_fraction = 0.0;
  }
  return out;
}

EnergyBudget energy_budget(const PulseEnvelope& in, const PulseEnvelope& out,
                           double g) {
  in.validate();
  out.validate();
  if (in.size() != out.size() || std::abs(in.dt - out.dt) > 1e-12 * in.dt ||
      std::abs(in.t0 - out.t0) > 1e-9 * in.dt)
    throw DomainError("energy_budget: envelopes must share the time grid");
  if (!std::isfinite(g) || g < 0.0 || g > 1.0)
    throw DomainError("energy_budget: G must lie in [0, 1]");
  const double e_in = in.energy();
  if (e_in <= 0.0) throw DomainError("energy_budget: zero-energy input");
  const double ratio = out.energy() / e_in;
  return {ratio, 1.0 - ratio, (1.0 - g) * (1.0 - g) + g * g};
}

}  // namespace coupler
