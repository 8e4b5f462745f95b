#include "coupler/cw.hpp"

#include <algorithm>
#include <cmath>

#include "coupler/errors.hpp"

namespace coupler {

void CouplingParams::validate() const {
  if (!std::isfinite(g) || g < 0.0 || g > 1.0)
    throw DomainError("CouplingParams: G must lie in [0, 1]");
  if (!std::isfinite(gamma) || gamma <= 0.0)
    throw DomainError("CouplingParams: Gamma must be positive");
  if (!std::isfinite(delta))
    throw DomainError("CouplingParams: Delta must be finite");
  if (!std::isfinite(omega0) || omega0 <= 0.0)
    throw DomainError("CouplingParams: omega0 must be positive");
}

std::complex<double> transmission_amplitude(double g, double gamma, double delta) {
  const std::complex<double> lorentzian =
      1.0 / std::complex<double>(1.0, -2.0 * delta / gamma);
  return 1.0 - 2.0 * g * lorentzian;
}

std::complex<double> transmission_amplitude(const CouplingParams& p) {
  p.validate();
  return transmission_amplitude(p.g, p.gamma, p.delta);
}

std::optional<double> phase_shift(const CouplingParams& p) {
  p.validate();
  const double d = p.delta / p.gamma;
  if (p.delta == 0.0) {
    if (p.g == 0.5) return std::nullopt;  // amplitude vanishes, phase undefined
    return p.g < 0.5 ? 0.0 : pi;
  }
  const double re = 1.0 + 4.0 * d * d - 2.0 * p.g;
  const double im = -4.0 * p.g * d;
  double phi = std::atan2(im, re);
  if (phi <= -pi) phi += two_pi;  // report in (-pi, pi]
  return phi;
}

double scattering_ratio(const CouplingParams& p, double s) {
  p.validate();
  if (std::isnan(s) || s < 0.0)
    throw DomainError("scattering_ratio: saturation parameter must be >= 0");
  if (std::isinf(s)) return 0.0;  // fully incoherent limit
  const double d = p.delta / p.gamma;
  return 4.0 * p.g / ((1.0 + 4.0 * d * d) * (1.0 + s));
}

TransmittedFraction transmitted_fraction(double g, double omega) {
  if (!std::isfinite(g) || g < 0.0 || g > 1.0)
    throw DomainError("transmitted_fraction: G must lie in [0, 1]");
  if (!std::isfinite(omega) || omega < 0.0 ||
      omega > full_sphere_weight * (1.0 + 1e-12))
    throw DomainError("transmitted_fraction: omega must lie in [0, 8 pi / 3]");
  const double t = 1.0 - 4.0 * g * (1.0 - omega / full_sphere_weight);
  if (t < 0.0) return {0.0, true};
  if (t > 1.0) return {1.0, true};
  return {t, false};
}

double saturation_parameter(double power_w, const CouplingParams& p, double hbar) {
  p.validate();
  if (!std::isfinite(power_w) || power_w < 0.0)
    throw DomainError("saturation_parameter: power must be >= 0");
  if (hbar <= 0.0) throw DomainError("saturation_parameter: hbar must be positive");
  const double d = p.delta / p.gamma;
  return p.g * 8.0 * power_w / (hbar * p.omega0 * p.gamma) / (1.0 + 4.0 * d * d);
}

double fluorescence_rate(double s, double gamma) {
  if (std::isnan(s) || s < 0.0)
    throw DomainError("fluorescence_rate: saturation parameter must be >= 0");
  if (!std::isfinite(gamma) || gamma <= 0.0)
    throw DomainError("fluorescence_rate: Gamma must be positive");
  if (std::isinf(s)) return 0.5 * gamma;
  return 0.5 * gamma * s / (1.0 + s);
}

double g_from_power_at_s1(double p_at_s1, const CouplingParams& p, double hbar) {
  if (!std::isfinite(p_at_s1) || p_at_s1 <= 0.0)
    throw DomainError("g_from_power_at_s1: power must be positive");
  const double d = p.delta / p.gamma;
  return (1.0 + 4.0 * d * d) * hbar * p.omega0 * p.gamma / (8.0 * p_at_s1);
}

double multilevel_correction(double g_two_level, double factor) {
  if (!std::isfinite(factor) || factor <= 0.0)
    throw DomainError("multilevel_correction: factor must be positive");
  if (!std::isfinite(g_two_level) || g_two_level < 0.0)
    throw DomainError("multilevel_correction: G must be >= 0");
  const double g = factor * g_two_level;
  if (g > 1.0)
    throw DomainError("multilevel_correction: corrected G exceeds 1 (unphysical)");
  return g;
}

}  // namespace coupler
