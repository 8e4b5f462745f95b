#ifndef COUPLER_GEOMETRY_HPP
#define COUPLER_GEOMETRY_HPP

#include "coupler/constants.hpp"

namespace coupler {

// Polar angle measured from the mirror's optical axis, with theta = 0
// pointing from the focus toward the vertex. A mirror of depth h covers
// theta in [hole_half_angle, rim_angle].
struct AngularRange {
  double theta_min = 0.0;
  double theta_max = pi;

  void validate() const;
};

struct MirrorGeometry {
  double focal_length = 1.0;     // meters
  double depth_ratio = 0.0;      // h/f
  double hole_half_angle = 0.0;  // radians, cap excluded around theta = 0

  void validate() const;
  double rim_radius() const;   // 2 f sqrt(h/f)
  double rim_angle() const;    // 2 arctan(sqrt(h/f))
  AngularRange angular_range() const { return {hole_half_angle, rim_angle()}; }
};

enum class DipoleKind { linear_pi, circular_sigma };

struct DipoleSpec {
  DipoleKind kind = DipoleKind::linear_pi;
  double axis_tilt = 0.0;  // quantization axis vs optical axis, [0, pi/2]

  void validate() const;
};

// Mapping between entrance-pupil radius and emission angle for a parabola
// of focal length f.
double theta_from_radius(double r, double f);
double radius_from_theta(double theta, double f);

// Angular intensity pattern of the dipole, normalized to 1 at its maximum.
// For a tilted quantization axis the pattern is evaluated about that axis,
// so the result depends on phi.
double dipole_pattern(const DipoleSpec& spec, double theta, double phi);

// Solid angle weighted with the dipole intensity pattern,
// integral of D(theta, phi) sin(theta) dtheta dphi over the range.
// Closed forms for an untilted axis; adaptive quadrature otherwise.
double weighted_solid_angle(const AngularRange& range, const DipoleSpec& spec);

// Quadrature evaluation regardless of tilt (cross-check path).
double weighted_solid_angle_quadrature(const AngularRange& range,
                                       const DipoleSpec& spec,
                                       double rel_tol = 1e-9);

// Weighted solid angle of one or two opposing cones of half-angle
// arcsin(na) about the optical axis.
double omega_lens(double na, int lens_count, const DipoleSpec& spec);

// Depth ratio at which the mirror's weighted solid angle (dipole axis
// parallel to the optical axis) equals that of two opposing lenses of the
// given NA with a perpendicular linear dipole. Bisection to 1e-6.
double parabola_lens_crossover(const DipoleSpec& spec, double lens_na);

// Plain solid-angle fraction captured from an isotropic point source.
double isotropic_fraction(const AngularRange& range);

// Captured-fraction times mirror reflectivity.
double collection_efficiency(double solid_fraction, double reflectivity);

}  // namespace coupler

#endif  // COUPLER_GEOMETRY_HPP
