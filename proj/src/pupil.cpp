#include "coupler/pupil.hpp"

#include <cmath>
#include <utility>

#include "coupler/errors.hpp"
#include "coupler/numerics.hpp"

namespace coupler {

namespace {

using cd = std::complex<double>;

// Composite Simpson over uniformly sampled values; falls back to a trapezoid
// step on the last interval when the interval count is odd.
cd simpson_samples(const std::vector<cd>& y, double dx) {
  const std::size_t n = y.size() - 1;  // intervals
  cd sum = 0.0;
  std::size_t even_end = (n % 2 == 0) ? n : n - 1;
  if (even_end >= 2) {
    sum = y[0] + y[even_end];
    for (std::size_t i = 1; i < even_end; ++i)
      sum += y[i] * ((i % 2) ? 4.0 : 2.0);
    sum *= dx / 3.0;
  }
  if (n % 2 != 0) sum += 0.5 * dx * (y[n - 1] + y[n]);
  return sum;
}

std::vector<cd> resample_linear(const std::vector<cd>& y, std::size_t m) {
  std::vector<cd> out(m);
  const double scale = static_cast<double>(y.size() - 1) / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = i * scale;
    const std::size_t k = std::min(static_cast<std::size_t>(x), y.size() - 2);
    const double frac = x - static_cast<double>(k);
    out[i] = y[k] * (1.0 - frac) + y[k + 1] * frac;
  }
  return out;
}

}  // namespace

RadialPupilField::RadialPupilField(std::vector<cd> samples, double r_max,
                                   Polarization pol)
    : samples_(std::move(samples)), r_max_(r_max), pol_(pol) {
  if (samples_.size() < 2)
    throw DomainError("RadialPupilField: need at least two radial samples");
  if (!std::isfinite(r_max_) || r_max_ <= 0.0)
    throw DomainError("RadialPupilField: r_max must be positive");
  for (const cd& v : samples_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("RadialPupilField: non-finite sample");
}

RadialPupilField RadialPupilField::from_profile(
    const std::function<cd(double)>& profile, double r_max, Polarization pol,
    int intervals) {
  if (intervals < 2) throw DomainError("RadialPupilField: need >= 2 intervals");
  std::vector<cd> samples(intervals + 1);
  const double dr = r_max / intervals;
  for (int i = 0; i <= intervals; ++i) samples[i] = profile(i * dr);
  return RadialPupilField(std::move(samples), r_max, pol);
}

RadialPupilField RadialPupilField::ideal(double focal_length, double r_max,
                                         int intervals) {
  return from_profile(
      [focal_length](double r) { return cd(ideal_pupil_profile(r, focal_length)); },
      r_max, Polarization::radial, intervals);
}

RadialPupilField RadialPupilField::doughnut(double waist, double r_max,
                                            int intervals) {
  return from_profile(
      [waist](double r) { return cd(doughnut_profile(r, waist)); }, r_max,
      Polarization::radial, intervals);
}

double RadialPupilField::radial_power() const {
  std::vector<cd> integrand(samples_.size());
  for (std::size_t i = 0; i < samples_.size(); ++i)
    integrand[i] = std::norm(samples_[i]) * (i * dr());
  return simpson_samples(integrand, dr()).real();
}

double ideal_pupil_profile(double r, double f, double e0) {
  if (!std::isfinite(r) || !std::isfinite(f) || r < 0.0 || f <= 0.0)
    throw DomainError("ideal_pupil_profile: need r >= 0 and f > 0");
  const double u = 1.0 + r * r / (4.0 * f * f);
  return e0 * r / (u * u);
}

double doughnut_profile(double r, double w, double e0) {
  if (!std::isfinite(r) || !std::isfinite(w) || r < 0.0 || w <= 0.0)
    throw DomainError("doughnut_profile: need r >= 0 and w > 0");
  return e0 * r * std::exp(-r * r / (w * w));
}

std::complex<double> complex_overlap(const RadialPupilField& a,
                                     const RadialPupilField& b) {
  if (std::abs(a.r_max() - b.r_max()) > 1e-9 * std::max(a.r_max(), b.r_max()))
    throw DomainError("pupil_overlap: fields must share the aperture radius");
  if (a.polarization() != b.polarization()) return 0.0;

  const std::vector<cd>* sa = &a.samples();
  const std::vector<cd>* sb = &b.samples();
  std::vector<cd> tmp;
  if (sa->size() != sb->size()) {
    // resample the coarser field onto the finer grid
    if (sa->size() < sb->size()) {
      tmp = resample_linear(*sa, sb->size());
      sa = &tmp;
    } else {
      tmp = resample_linear(*sb, sa->size());
      sb = &tmp;
    }
  }

  const std::size_t n = sa->size();
  const double dr = a.r_max() / static_cast<double>(n - 1);
  std::vector<cd> num(n), pa(n), pb(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = i * dr;
    num[i] = std::conj((*sa)[i]) * (*sb)[i] * r;
    pa[i] = std::norm((*sa)[i]) * r;
    pb[i] = std::norm((*sb)[i]) * r;
  }
  const double power_a = simpson_samples(pa, dr).real();
  const double power_b = simpson_samples(pb, dr).real();
  if (power_a <= 0.0 || power_b <= 0.0)
    throw DomainError("pupil_overlap: zero-power field");
  return simpson_samples(num, dr) / std::sqrt(power_a * power_b);
}

double pupil_overlap(const RadialPupilField& a, const RadialPupilField& b) {
  return complex_overlap(a, b).real();
}

WaistOptimum optimize_waist(const MirrorGeometry& geom) {
  geom.validate();
  if (geom.depth_ratio <= 0.0)
    throw DomainError("optimize_waist: mirror depth_ratio must be positive");
  const double f = geom.focal_length;
  const double r_max = geom.rim_radius();
  const RadialPupilField ideal = RadialPupilField::ideal(f, r_max);
  auto eta_of_w = [&](double w) {
    return pupil_overlap(RadialPupilField::doughnut(w, r_max), ideal);
  };
  auto [w, eta] = numerics::golden_max(eta_of_w, 0.1 * f, 20.0 * f, 1e-6 * f);
  if (eta <= 0.0)
    throw NumericalError("optimize_waist: no positive overlap found on the bracket");
  return {w, eta};
}

double clipping_loss(double w, double r_max) {
  if (!std::isfinite(w) || !std::isfinite(r_max) || w <= 0.0 || r_max <= 0.0)
    throw DomainError("clipping_loss: need w > 0 and r_max > 0");
  const double x = 2.0 * r_max * r_max / (w * w);
  return (1.0 + x) * std::exp(-x);
}

double coupling_efficiency(double omega, double eta) {
  if (!std::isfinite(omega) || omega < 0.0 || omega > full_sphere_weight * (1.0 + 1e-12))
    throw DomainError("coupling_efficiency: omega must lie in [0, 8 pi / 3]");
  if (!std::isfinite(eta) || eta < 0.0 || eta > 1.0 + 1e-12)
    throw DomainError("coupling_efficiency: eta must lie in [0, 1]");
  return omega / full_sphere_weight * eta * eta;
}

RadialPupilField apply_aberration(const RadialPupilField& field,
                                  const AberrationProfile& ab) {
  if (!std::isfinite(ab.wavelength) || ab.wavelength <= 0.0)
    throw DomainError("apply_aberration: wavelength must be positive");
  if (ab.deviation.size() < 2)
    throw DomainError("apply_aberration: need at least two deviation samples");
  if (std::abs(ab.r_max - field.r_max()) > 1e-9 * std::max(ab.r_max, field.r_max()))
    throw DomainError("apply_aberration: deviation map and field apertures differ");
  const std::size_t n = field.samples().size();
  std::vector<cd> out(n);
  const double step =
      static_cast<double>(ab.deviation.size() - 1) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i * step;
    const std::size_t k =
        std::min(static_cast<std::size_t>(x), ab.deviation.size() - 2);
    const double frac = x - static_cast<double>(k);
    const double delta =
        ab.deviation[k] * (1.0 - frac) + ab.deviation[k + 1] * frac;
    const double phase = 4.0 * pi * delta / ab.wavelength;
    out[i] = field.samples()[i] * std::polar(1.0, phase);
  }
  return RadialPupilField(std::move(out), field.r_max(), field.polarization());
}

double strehl_ratio(const RadialPupilField& field, const AberrationProfile& ab,
                    const RadialPupilField& reference) {
  const double clean = std::abs(complex_overlap(field, reference));
  if (clean <= 0.0)
    throw DomainError("strehl_ratio: clean field has zero overlap with the reference");
  const double aberrated =
      std::abs(complex_overlap(apply_aberration(field, ab), reference));
  const double ratio = (aberrated / clean) * (aberrated / clean);
  return ratio;
}

}  // namespace coupler
