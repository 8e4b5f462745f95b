#include "coupler/geometry.hpp"

#include <cmath>
#include <string>

#include "coupler/errors.hpp"
#include "coupler/numerics.hpp"

namespace coupler {

namespace {

bool finite(double x) { return std::isfinite(x); }

// Integrals over [t1, t2] of sin t, cos^2 t sin t, and sin^3 t.
double sin_integral(double t1, double t2) { return std::cos(t1) - std::cos(t2); }

double cos2sin_integral(double t1, double t2) {
  const double c1 = std::cos(t1);
  const double c2 = std::cos(t2);
  return (c1 * c1 * c1 - c2 * c2 * c2) / 3.0;
}

double sin3_integral(double t1, double t2) {
  return sin_integral(t1, t2) - cos2sin_integral(t1, t2);
}

}  // namespace

void AngularRange::validate() const {
  if (!finite(theta_min) || !finite(theta_max) || theta_min < 0.0 ||
      theta_max > pi + 1e-12 || theta_min > theta_max)
    throw DomainError("AngularRange: need 0 <= theta_min <= theta_max <= pi");
}

void MirrorGeometry::validate() const {
  if (!finite(focal_length) || focal_length <= 0.0)
    throw DomainError("MirrorGeometry: focal_length must be positive");
  if (!finite(depth_ratio) || depth_ratio < 0.0)
    throw DomainError("MirrorGeometry: depth_ratio must be >= 0");
  if (!finite(hole_half_angle) || hole_half_angle < 0.0)
    throw DomainError("MirrorGeometry: hole_half_angle must be >= 0");
  if (depth_ratio > 0.0 && hole_half_angle > 0.0 && hole_half_angle >= rim_angle())
    throw DomainError("MirrorGeometry: hole_half_angle must be smaller than the rim angle");
}

double MirrorGeometry::rim_radius() const {
  return 2.0 * focal_length * std::sqrt(depth_ratio);
}

double MirrorGeometry::rim_angle() const {
  return 2.0 * std::atan(std::sqrt(depth_ratio));
}

void DipoleSpec::validate() const {
  if (!finite(axis_tilt) || axis_tilt < 0.0 || axis_tilt > pi / 2.0 + 1e-12)
    throw DomainError("DipoleSpec: axis_tilt must lie in [0, pi/2]");
}

double theta_from_radius(double r, double f) {
  if (!finite(r) || !finite(f) || r < 0.0 || f <= 0.0)
    throw DomainError("theta_from_radius: need r >= 0 and f > 0");
  return 2.0 * std::atan(r / (2.0 * f));
}

double radius_from_theta(double theta, double f) {
  if (!finite(theta) || !finite(f) || theta < 0.0 || theta >= pi || f <= 0.0)
    throw DomainError("radius_from_theta: need theta in [0, pi) and f > 0");
  return 2.0 * f * std::tan(0.5 * theta);
}

double dipole_pattern(const DipoleSpec& spec, double theta, double phi) {
  spec.validate();
  if (!finite(theta) || theta < 0.0 || theta > pi + 1e-12)
    throw DomainError("dipole_pattern: theta must lie in [0, pi]");
  // cos of the angle between the emission direction and the dipole axis;
  // the axis is tilted by axis_tilt in the x-z plane.
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double ca = std::cos(spec.axis_tilt);
  const double sa = std::sin(spec.axis_tilt);
  const double cos_axis = st * std::cos(phi) * sa + ct * ca;
  const double c2 = cos_axis * cos_axis;
  return spec.kind == DipoleKind::linear_pi ? 1.0 - c2 : 0.5 * (1.0 + c2);
}

double weighted_solid_angle_quadrature(const AngularRange& range,
                                       const DipoleSpec& spec, double rel_tol) {
  range.validate();
  spec.validate();
  auto outer = [&](double theta) {
    auto inner = [&](double phi) { return dipole_pattern(spec, theta, phi); };
    return numerics::integrate_adaptive(inner, 0.0, two_pi, 0.1 * rel_tol) *
           std::sin(theta);
  };
  return numerics::integrate_adaptive(outer, range.theta_min, range.theta_max,
                                      rel_tol);
}

double weighted_solid_angle(const AngularRange& range, const DipoleSpec& spec) {
  range.validate();
  spec.validate();
  if (spec.axis_tilt != 0.0)
    return weighted_solid_angle_quadrature(range, spec);
  if (spec.kind == DipoleKind::linear_pi)
    return two_pi * sin3_integral(range.theta_min, range.theta_max);
  // circular dipole: (1 + cos^2)/2 integrates to pi * (sin + cos^2 sin) terms
  return pi * (sin_integral(range.theta_min, range.theta_max) +
               cos2sin_integral(range.theta_min, range.theta_max));
}

double omega_lens(double na, int lens_count, const DipoleSpec& spec) {
  spec.validate();
  if (!finite(na) || na <= 0.0 || na > 1.0)
    throw DomainError("omega_lens: NA must lie in (0, 1]");
  if (lens_count != 1 && lens_count != 2)
    throw DomainError("omega_lens: lens_count must be 1 or 2");
  const double half_angle = std::asin(na);
  const AngularRange cone{0.0, half_angle};
  double omega;
  if (spec.axis_tilt == 0.0) {
    omega = weighted_solid_angle(cone, spec);
  } else {
    // phi-averaged pattern is polynomial in cos(theta); closed form for a
    // linear dipole, quadrature otherwise.
    if (spec.kind == DipoleKind::linear_pi) {
      const double ca2 = std::cos(spec.axis_tilt) * std::cos(spec.axis_tilt);
      const double sa2 = 1.0 - ca2;
      omega = two_pi * (sin_integral(0.0, half_angle) -
                        ca2 * cos2sin_integral(0.0, half_angle) -
                        0.5 * sa2 * sin3_integral(0.0, half_angle));
    } else {
      omega = weighted_solid_angle_quadrature(cone, spec);
    }
  }
  // The dipole pattern is symmetric under inversion, so the opposing cone
  // contributes the same weight.
  return lens_count == 2 ? 2.0 * omega : omega;
}

double parabola_lens_crossover(const DipoleSpec& spec, double lens_na) {
  const double target = omega_lens(lens_na, 2, DipoleSpec{DipoleKind::linear_pi, pi / 2.0});
  auto diff = [&](double hf) {
    const MirrorGeometry geom{1.0, hf, 0.0};
    return weighted_solid_angle(geom.angular_range(), spec) - target;
  };
  const double lo = 1e-6;
  const double hi = 1e3;
  if ((diff(lo) > 0.0) == (diff(hi) > 0.0))
    throw NumericalError(
        "parabola_lens_crossover: mirror never matches the lens coverage "
        "(no sign change on the depth-ratio bracket)");
  return numerics::bisect_root(diff, lo, hi, 1e-6);
}

double isotropic_fraction(const AngularRange& range) {
  range.validate();
  return 0.5 * (std::cos(range.theta_min) - std::cos(range.theta_max));
}

double collection_efficiency(double solid_fraction, double reflectivity) {
  if (!finite(solid_fraction) || solid_fraction < 0.0 || solid_fraction > 1.0)
    throw DomainError("collection_efficiency: solid_fraction must be in [0, 1]");
  if (!finite(reflectivity) || reflectivity < 0.0 || reflectivity > 1.0)
    throw DomainError("collection_efficiency: reflectivity must be in [0, 1]");
  return solid_fraction * reflectivity;
}

}  // namespace coupler
