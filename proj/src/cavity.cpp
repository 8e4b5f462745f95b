#include "coupler/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "coupler/errors.hpp"

namespace coupler {

namespace {

using cd = std::complex<double>;

// Value halfway between samples k and k+1, 4-point Lagrange interpolation
// (one-sided cubic at the array ends) so the driver keeps the integrator's
// fourth-order accuracy.
cd midpoint(const std::vector<cd>& s, std::size_t k) {
  const std::size_t n = s.size();
  if (n < 4) return 0.5 * (s[k] + s[k + 1]);
  if (k >= 1 && k + 2 < n)
    return (9.0 * (s[k] + s[k + 1]) - (s[k - 1] + s[k + 2])) / 16.0;
  // one-sided: cubic through four nodes starting at the nearest edge
  const std::size_t base = (k == 0) ? 0 : n - 4;
  const double x = (k == 0) ? 0.5 : 2.5;
  cd acc = 0.0;
  for (int j = 0; j < 4; ++j) {
    double w = 1.0;
    for (int m = 0; m < 4; ++m)
      if (m != j) w *= (x - m) / static_cast<double>(j - m);
    acc += w * s[base + j];
  }
  return acc;
}

}  // namespace

CavityParams CavityParams::from_decay_time(double r1, double r2,
                                           double intensity_decay_time,
                                           double detuning) {
  if (!std::isfinite(intensity_decay_time) || intensity_decay_time <= 0.0)
    throw DomainError("CavityParams: decay time must be positive");
  if (r1 >= 1.0 && r2 >= 1.0)
    throw DomainError("CavityParams: R1 = R2 = 1 cannot produce a finite decay time");
  CavityParams p{r1, r2, 1.0 / intensity_decay_time, detuning};
  p.validate();
  return p;
}

void CavityParams::validate() const {
  if (!std::isfinite(r1) || r1 <= 0.0 || r1 > 1.0 || !std::isfinite(r2) ||
      r2 <= 0.0 || r2 > 1.0)
    throw DomainError("CavityParams: reflectivities must lie in (0, 1]");
  if (!std::isfinite(kappa) || kappa <= 0.0)
    throw DomainError("CavityParams: kappa must be positive");
  if (!std::isfinite(detuning))
    throw DomainError("CavityParams: detuning must be finite");
}

CavityRates cavity_rates(const CavityParams& params) {
  params.validate();
  const double t1 = 1.0 - params.r1;
  const double t2 = 1.0 - params.r2;
  if (t1 + t2 <= 0.0)
    throw DomainError("cavity_rates: both mirrors perfectly reflective, no coupling");
  const double k1 = params.kappa * t1 / (t1 + t2);
  return {params.kappa, k1, params.kappa - k1, k1 / params.kappa};
}

CavityResponse simulate_reflection(const PulseEnvelope& pulse,
                                   const CavityParams& params) {
  pulse.validate();
  const CavityRates rates = cavity_rates(params);
  if (pulse.dt > 1.0 / (50.0 * params.kappa))
    throw DomainError("simulate_reflection: grid too coarse, need dt <= 1/(50 kappa)");

  const std::size_t n = pulse.size();
  const cd pole(-0.5 * params.kappa, params.detuning);
  const double root_k1 = std::sqrt(rates.kappa1);
  const double h = pulse.dt;

  std::vector<cd> a(n);
  a[0] = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const cd q0 = root_k1 * pulse.samples[i];
    const cd qm = root_k1 * midpoint(pulse.samples, i);
    const cd q1 = root_k1 * pulse.samples[i + 1];
    const cd k1 = pole * a[i] + q0;
    const cd k2 = pole * (a[i] + 0.5 * h * k1) + qm;
    const cd k3 = pole * (a[i] + 0.5 * h * k2) + qm;
    const cd k4 = pole * (a[i] + h * k3) + q1;
    a[i + 1] = a[i] + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  CavityResponse out;
  out.intracavity = PulseEnvelope{pulse.t0, pulse.dt, a};
  out.reflected = PulseEnvelope{pulse.t0, pulse.dt, std::vector<cd>(n)};
  for (std::size_t i = 0; i < n; ++i)
    out.reflected.samples[i] = -pulse.samples[i] + root_k1 * a[i];
  return out;
}

double storage_efficiency(const PulseEnvelope& pulse, const CavityParams& params,
                          double eta_spatial) {
  if (!std::isfinite(eta_spatial) || eta_spatial < 0.0 || eta_spatial > 1.0)
    throw DomainError("storage_efficiency: eta_spatial must lie in [0, 1]");
  const double energy = pulse.energy();
  if (energy <= 0.0) throw DomainError("storage_efficiency: zero-energy pulse");

  PulseEnvelope normalized = pulse;
  const double scale = 1.0 / std::sqrt(energy);
  for (auto& v : normalized.samples) v *= scale;

  const CavityResponse response = simulate_reflection(normalized, params);

  double peak = 0.0;
  for (const auto& v : normalized.samples) peak = std::max(peak, std::abs(v));
  std::size_t cut = normalized.size() - 1;
  for (std::size_t i = normalized.size(); i-- > 0;) {
    if (std::abs(normalized.samples[i]) > 1e-6 * peak) {
      cut = i;
      break;
    }
  }
  return eta_spatial * std::norm(response.intracavity.samples[cut]);
}

}  // namespace coupler
