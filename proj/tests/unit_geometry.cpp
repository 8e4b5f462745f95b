#include <doctest.h>

#include <cmath>
#include <random>

#include "coupler/errors.hpp"
#include "coupler/geometry.hpp"

using namespace coupler;

namespace {
const DipoleSpec axial_pi{DipoleKind::linear_pi, 0.0};
const DipoleSpec axial_sigma{DipoleKind::circular_sigma, 0.0};
const DipoleSpec perp_pi{DipoleKind::linear_pi, pi / 2.0};
}  // namespace

TEST_CASE("angle/radius mapping") {
  CHECK(theta_from_radius(0.0, 1.0) == 0.0);
  CHECK(theta_from_radius(2.0, 1.0) == doctest::Approx(pi / 2).epsilon(1e-15));
  // r = 2 f sqrt(5.67) reaches the rim of the h/f = 5.67 mirror
  CHECK(theta_from_radius(2.0 * std::sqrt(5.67), 1.0) ==
        doctest::Approx(2.3464037820560872).epsilon(1e-12));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(0.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double r = uni(rng);
    const double f = 0.1 + uni(rng);
    const double back = radius_from_theta(theta_from_radius(r, f), f);
    CHECK(std::abs(back - r) <= 1e-12 * std::max(r, 1.0));
  }

  // strictly increasing in r
  double prev = -1.0;
  for (double r = 0.0; r < 50.0; r += 0.5) {
    const double th = theta_from_radius(r, 2.0);
    CHECK(th > prev);
    prev = th;
  }

  CHECK_THROWS_AS(theta_from_radius(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(theta_from_radius(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(theta_from_radius(std::nan(""), 1.0), DomainError);
}

TEST_CASE("dipole patterns") {
  CHECK(dipole_pattern(axial_pi, pi / 2, 0.0) == doctest::Approx(1.0));
  CHECK(dipole_pattern(axial_pi, 0.0, 0.0) == doctest::Approx(0.0));
  CHECK(dipole_pattern(axial_sigma, 0.0, 0.0) == doctest::Approx(1.0));
  CHECK(dipole_pattern(axial_sigma, pi / 2, 0.0) == doctest::Approx(0.5));

  // phi independence for an untilted axis
  for (double phi = 0.0; phi < two_pi; phi += 0.31) {
    CHECK(dipole_pattern(axial_pi, 1.1, phi) ==
          doctest::Approx(dipole_pattern(axial_pi, 1.1, 0.0)).epsilon(1e-15));
  }

  // values stay in [0, 1]
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uth(0.0, pi);
  std::uniform_real_distribution<double> uphi(0.0, two_pi);
  std::uniform_real_distribution<double> utilt(0.0, pi / 2);
  for (int i = 0; i < 500; ++i) {
    const DipoleSpec spec{i % 2 ? DipoleKind::linear_pi : DipoleKind::circular_sigma,
                          utilt(rng)};
    const double v = dipole_pattern(spec, uth(rng), uphi(rng));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("weighted solid angle closed forms") {
  const AngularRange sphere{0.0, pi};
  CHECK(weighted_solid_angle(sphere, axial_pi) ==
        doctest::Approx(full_sphere_weight).epsilon(1e-15));
  CHECK(weighted_solid_angle(sphere, axial_sigma) ==
        doctest::Approx(full_sphere_weight).epsilon(1e-15));

  const MirrorGeometry deep{1.0, 5.67, 0.0};
  const double frac =
      weighted_solid_angle(deep.angular_range(), axial_pi) / full_sphere_weight;
  CHECK(frac == doctest::Approx(0.94).epsilon(0.0054));
  CHECK(frac == doctest::Approx(0.9393073345).epsilon(1e-9));

  const MirrorGeometry half{1.0, 1.0, 0.0};
  CHECK(weighted_solid_angle(half.angular_range(), axial_pi) ==
        doctest::Approx(4.0 * pi / 3.0).epsilon(1e-14));
}

TEST_CASE("solid angle quadrature matches closed forms, tilted included") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    double t1 = pi * uni(rng);
    double t2 = pi * uni(rng);
    if (t1 > t2) std::swap(t1, t2);
    const DipoleSpec spec{i % 2 ? DipoleKind::linear_pi : DipoleKind::circular_sigma,
                          0.0};
    const double closed = weighted_solid_angle({t1, t2}, spec);
    const double quad = weighted_solid_angle_quadrature({t1, t2}, spec, 1e-10);
    CHECK(std::abs(closed - quad) <= 1e-9 * std::max(std::abs(closed), 1e-6));
  }

  // tilted linear dipole: quadrature against the phi-averaged closed form
  for (int i = 0; i < 10; ++i) {
    const double tilt = 0.5 * pi * uni(rng);
    const double theta_max = 0.2 + 2.8 * uni(rng);
    const double ca2 = std::cos(tilt) * std::cos(tilt);
    const double c = std::cos(theta_max);
    const double i_sin = 1.0 - c;
    const double i_c2sin = (1.0 - c * c * c) / 3.0;
    const double i_sin3 = i_sin - i_c2sin;
    const double closed =
        two_pi * (i_sin - ca2 * i_c2sin - 0.5 * (1.0 - ca2) * i_sin3);
    const double quad = weighted_solid_angle(
        {0.0, theta_max}, DipoleSpec{DipoleKind::linear_pi, tilt});
    CHECK(quad == doctest::Approx(closed).epsilon(1e-9));
  }
}

TEST_CASE("solid angle additivity and monotonicity") {
  const DipoleSpec spec = axial_pi;
  const double whole = weighted_solid_angle({0.3, 2.9}, spec);
  const double parts =
      weighted_solid_angle({0.3, 1.7}, spec) + weighted_solid_angle({1.7, 2.9}, spec);
  CHECK(whole == doctest::Approx(parts).epsilon(1e-14));

  // complement adds to the full sphere
  const double complement = weighted_solid_angle({0.0, 0.3}, spec) +
                            weighted_solid_angle({2.9, pi}, spec);
  CHECK(whole + complement == doctest::Approx(full_sphere_weight).epsilon(1e-14));

  // non-decreasing in theta_max, non-increasing in theta_min (and hence in
  // the hole half-angle, which sets theta_min)
  double prev = -1.0;
  for (double t = 0.0; t <= pi; t += 0.05) {
    const double v = weighted_solid_angle({0.0, t}, spec);
    CHECK(v >= prev);
    prev = v;
  }
  prev = full_sphere_weight + 1.0;
  for (double t = 0.0; t <= 2.9; t += 0.05) {
    const double v = weighted_solid_angle({t, 2.9}, spec);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("lens coverage") {
  CHECK(omega_lens(1.0, 2, perp_pi) ==
        doctest::Approx(full_sphere_weight).epsilon(1e-14));
  const double two = omega_lens(0.95, 2, perp_pi);
  CHECK(two / full_sphere_weight == doctest::Approx(0.76).epsilon(0.014));
  CHECK(omega_lens(0.95, 1, perp_pi) == doctest::Approx(0.5 * two).epsilon(1e-14));
  CHECK_THROWS_AS(omega_lens(0.0, 2, perp_pi), DomainError);
  CHECK_THROWS_AS(omega_lens(1.2, 2, perp_pi), DomainError);
  CHECK_THROWS_AS(omega_lens(0.9, 3, perp_pi), DomainError);
}

TEST_CASE("mirror/lens crossover") {
  const double hf = parabola_lens_crossover(axial_pi, 0.95);
  CHECK(hf == doctest::Approx(2.12).epsilon(0.01));
  // the root actually balances the two coverages
  const MirrorGeometry geom{1.0, hf, 0.0};
  CHECK(weighted_solid_angle(geom.angular_range(), axial_pi) ==
        doctest::Approx(omega_lens(0.95, 2, perp_pi)).epsilon(1e-5));

  // NA -> 1: the mirror can never beat the full sphere
  CHECK_THROWS_AS(parabola_lens_crossover(axial_pi, 1.0), NumericalError);

  const double hf_small = parabola_lens_crossover(axial_pi, 0.5);
  CHECK(hf_small < hf);
}

TEST_CASE("isotropic fraction and collection budget") {
  CHECK(isotropic_fraction({0.0, pi}) == doctest::Approx(1.0));
  const MirrorGeometry deep{1.0, 5.67, 0.0};
  CHECK(isotropic_fraction(deep.angular_range()) ==
        doctest::Approx(0.8500749625).epsilon(1e-9));

  // the hole angle is a free parameter: a 0.403 rad electrode opening takes
  // the deep mirror's isotropic capture down to 81%
  const double hole = std::acos(2.0 * 0.81 + std::cos(deep.rim_angle()));
  const MirrorGeometry holed{1.0, 5.67, hole};
  CHECK(isotropic_fraction(holed.angular_range()) ==
        doctest::Approx(0.81).epsilon(1e-12));
  CHECK(hole == doctest::Approx(0.4030982).epsilon(1e-5));

  CHECK(collection_efficiency(0.81, 0.67) == doctest::Approx(0.543).epsilon(1e-3));
  CHECK(collection_efficiency(0.94, 0.87) == doctest::Approx(0.818).epsilon(1e-3));
  CHECK(collection_efficiency(1.0, 1.0) == 1.0);
  CHECK_THROWS_AS(collection_efficiency(1.2, 0.5), DomainError);
}

TEST_CASE("geometry validation") {
  CHECK_THROWS_AS((MirrorGeometry{-1.0, 2.0, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((MirrorGeometry{1.0, 1.0, 2.0}.validate()), DomainError);
  CHECK_NOTHROW((MirrorGeometry{1.0, 5.67, 0.2}.validate()));
  CHECK_THROWS_AS((AngularRange{2.0, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((DipoleSpec{DipoleKind::linear_pi, 3.0}.validate()), DomainError);

  const MirrorGeometry geom{2.0, 5.67, 0.0};
  CHECK(geom.rim_radius() == doctest::Approx(4.0 * std::sqrt(5.67)));
  CHECK(geom.rim_angle() == doctest::Approx(2.0 * std::atan(std::sqrt(5.67))));
}
