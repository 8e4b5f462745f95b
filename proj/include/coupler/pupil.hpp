#ifndef COUPLER_PUPIL_HPP
#define COUPLER_PUPIL_HPP

#include <complex>
#include <functional>
#include <vector>

#include "coupler/geometry.hpp"

namespace coupler {

enum class Polarization { radial, azimuthal, uniform_linear, uniform_circular };

// Complex radial amplitude on a uniform grid over [0, r_max], together with
// a polarization label. Fields with different labels are orthogonal under
// the pupil inner product.
class RadialPupilField {
 public:
  static constexpr int default_intervals = 4096;

  RadialPupilField(std::vector<std::complex<double>> samples, double r_max,
                   Polarization pol);

  static RadialPupilField from_profile(
      const std::function<std::complex<double>(double)>& profile, double r_max,
      Polarization pol, int intervals = default_intervals);

  // Collimated linear-dipole amplitude, E0 * r / (1 + r^2/(4 f^2))^2,
  // radially polarized.
  static RadialPupilField ideal(double focal_length, double r_max,
                                int intervals = default_intervals);

  // Radially polarized doughnut, E0 * r * exp(-r^2/w^2).
  static RadialPupilField doughnut(double waist, double r_max,
                                   int intervals = default_intervals);

  const std::vector<std::complex<double>>& samples() const { return samples_; }
  double r_max() const { return r_max_; }
  double dr() const { return r_max_ / static_cast<double>(samples_.size() - 1); }
  Polarization polarization() const { return pol_; }

  // Integral of |E|^2 r dr over the aperture (azimuthal factor omitted).
  double radial_power() const;

 private:
  std::vector<std::complex<double>> samples_;
  double r_max_;
  Polarization pol_;
};

double ideal_pupil_profile(double r, double f, double e0 = 1.0);
double doughnut_profile(double r, double w, double e0 = 1.0);

// Normalized pupil-plane inner product with measure r dr dphi, restricted to
// the common aperture. Orthogonal polarization labels give 0.
std::complex<double> complex_overlap(const RadialPupilField& a,
                                     const RadialPupilField& b);

// Real part of the complex overlap; equals the signed overlap for
// real-phased fields.
double pupil_overlap(const RadialPupilField& a, const RadialPupilField& b);

struct WaistOptimum {
  double waist;  // same unit as the focal length
  double eta;
};

// Golden-section maximization of the doughnut/ideal overlap over the waist,
// bracket [0.1 f, 20 f], tolerance 1e-6 f.
WaistOptimum optimize_waist(const MirrorGeometry& geom);

// Fraction of doughnut power falling beyond the aperture radius,
// (1 + x) exp(-x) with x = 2 r_max^2 / w^2.
double clipping_loss(double w, double r_max);

// G = (omega / (8 pi / 3)) * eta^2.
double coupling_efficiency(double omega, double eta);

// Surface deviation delta(r) sampled uniformly on [0, r_max], plus the
// wavelength the phase error is scored at.
struct AberrationProfile {
  std::vector<double> deviation;  // meters, same unit as wavelength
  double r_max = 1.0;
  double wavelength = 1.0;
};

// Multiplies the field by exp(i 4 pi delta(r) / lambda): double pass on
// reflection at normal incidence. Power is unchanged.
RadialPupilField apply_aberration(const RadialPupilField& field,
                                  const AberrationProfile& ab);

// |overlap(aberrated, reference)|^2 / |overlap(clean, reference)|^2.
double strehl_ratio(const RadialPupilField& field, const AberrationProfile& ab,
                    const RadialPupilField& reference);

}  // namespace coupler

#endif  // COUPLER_PUPIL_HPP
