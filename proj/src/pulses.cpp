#include "coupler/pulses.hpp"

#include <algorithm>
#include <cmath>

#include "coupler/errors.hpp"
#include "coupler/numerics.hpp"

namespace coupler {

namespace {

using cd = std::complex<double>;

double ideal_value(double t, double gamma, double half_tol) {
  if (std::abs(t) <= half_tol) return 0.5;
  return t < 0.0 ? std::exp(0.5 * gamma * t) : 0.0;
}

}  // namespace

void PulseEnvelope::validate() const {
  if (samples.size() < 2)
    throw DomainError("PulseEnvelope: need at least two samples");
  if (!std::isfinite(dt) || dt <= 0.0)
    throw DomainError("PulseEnvelope: dt must be positive");
  if (!std::isfinite(t0)) throw DomainError("PulseEnvelope: t0 must be finite");
  for (const cd& v : samples)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("PulseEnvelope: non-finite sample");
}

double PulseEnvelope::energy() const {
  validate();
  std::vector<double> intensity(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    intensity[i] = std::norm(samples[i]);
  return numerics::trapezoid(intensity, dt);
}

PulseEnvelope ideal_envelope(double t0, double dt, std::size_t n, double gamma) {
  if (!std::isfinite(gamma) || gamma <= 0.0)
    throw DomainError("ideal_envelope: Gamma must be positive");
  if (n < 2 || dt <= 0.0)
    throw DomainError("ideal_envelope: need n >= 2 and dt > 0");
  PulseEnvelope env{t0, dt, std::vector<cd>(n)};
  const double half_tol = 1e-9 * dt;
  for (std::size_t i = 0; i < n; ++i)
    env.samples[i] = ideal_value(env.time(i), gamma, half_tol);
  return env;
}

double temporal_overlap(const PulseEnvelope& env, double gamma) {
  env.validate();
  if (gamma <= 0.0) throw DomainError("temporal_overlap: Gamma must be positive");
  const double norm = env.energy();
  if (norm <= 0.0) throw DomainError("temporal_overlap: zero-norm envelope");
  const double half_tol = 1e-9 * env.dt;
  std::vector<double> integrand(env.size());
  for (std::size_t i = 0; i < env.size(); ++i)
    integrand[i] =
        env.samples[i].real() * ideal_value(env.time(i), gamma, half_tol);
  const double num = numerics::trapezoid(integrand, env.dt);
  return num / std::sqrt(norm / gamma);
}

ShiftedOverlap temporal_overlap_best_shift(const PulseEnvelope& env, double gamma) {
  env.validate();
  if (gamma <= 0.0) throw DomainError("temporal_overlap: Gamma must be positive");
  const double norm = env.energy();
  if (norm <= 0.0) throw DomainError("temporal_overlap: zero-norm envelope");
  const double denom = std::sqrt(norm / gamma);
  const std::size_t n = env.size();

  // With the cut-off at s, the numerator is exp(-gamma s / 2) times the
  // running integral of E(t) exp(gamma t / 2); one cumulative pass gives
  // the overlap at every grid node.
  std::vector<double> weighted(n), cum(n);
  for (std::size_t i = 0; i < n; ++i)
    weighted[i] = env.samples[i].real() * std::exp(0.5 * gamma * env.time(i));
  cum[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i)
    cum[i] = cum[i - 1] + 0.5 * env.dt * (weighted[i - 1] + weighted[i]);

  auto eta_at_node = [&](std::size_t i) {
    return std::exp(-0.5 * gamma * env.time(i)) * cum[i] / denom;
  };

  std::size_t best = 0;
  double best_eta = eta_at_node(0);
  for (std::size_t i = 1; i < n; ++i) {
    const double e = eta_at_node(i);
    if (e > best_eta) {
      best_eta = e;
      best = i;
    }
  }

  double shift = env.time(best);
  // refine between the neighbouring nodes; the peak may be kinked (it is for
  // pure exponentials), so bracket it with a golden section rather than a
  // parabola
  if (best > 0 && best + 1 < n) {
    auto eta_cont = [&](double s) {
      const std::size_t k = std::min(
          static_cast<std::size_t>((s - env.t0) / env.dt), n - 2);
      const double frac = (s - env.time(k)) / env.dt;
      const double w_s = weighted[k] * (1.0 - frac) + weighted[k + 1] * frac;
      const double cum_s = cum[k] + 0.5 * (s - env.time(k)) * (weighted[k] + w_s);
      return std::exp(-0.5 * gamma * s) * cum_s / denom;
    };
    const auto [s, eta_s] = numerics::golden_max(
        eta_cont, env.time(best - 1), env.time(best + 1), 1e-4 * env.dt);
    if (eta_s > best_eta) {
      best_eta = eta_s;
      shift = s;
    }
  }
  return {best_eta, shift};
}

HistogramEnvelope envelope_from_histogram(const std::vector<double>& counts,
                                          double bin_width, double t0,
                                          double background) {
  if (counts.size() < 2)
    throw DomainError("envelope_from_histogram: need at least two bins");
  if (!std::isfinite(bin_width) || bin_width <= 0.0)
    throw DomainError("envelope_from_histogram: bin_width must be positive");
  HistogramEnvelope out;
  out.envelope.t0 = t0;
  out.envelope.dt = bin_width;
  out.envelope.samples.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (!std::isfinite(counts[i]) || counts[i] < 0.0)
      throw DomainError("envelope_from_histogram: counts must be >= 0");
    const double net = counts[i] - background;
    if (net < 0.0) ++out.clamped_bins;
    out.envelope.samples[i] = std::sqrt(std::max(net, 0.0));
  }
  return out;
}

AomDrive aom_drive(double t, double tau, double omega_rf) {
  if (!std::isfinite(tau) || tau <= 0.0)
    throw DomainError("aom_drive: tau must be positive");
  if (!std::isfinite(t)) throw DomainError("aom_drive: t must be finite");
  if (t > 0.0) return {0.0, 0.0};
  const double x = std::min(std::exp(0.5 * t / tau), 1.0);
  const double envelope = std::asin(x);
  return {envelope * std::sin(omega_rf * t), x * x};
}

double absorption_probability(double g, double eta_t) {
  if (!std::isfinite(g) || g < 0.0 || g > 1.0)
    throw DomainError("absorption_probability: G must lie in [0, 1]");
  if (!std::isfinite(eta_t) || eta_t < 0.0 || eta_t > 1.0)
    throw DomainError("absorption_probability: eta_t must lie in [0, 1]");
  return g * eta_t * eta_t;
}

}  // namespace coupler
