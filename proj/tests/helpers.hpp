#ifndef COUPLER_TEST_HELPERS_HPP
#define COUPLER_TEST_HELPERS_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "coupler/pulses.hpp"
#include "coupler/stokes.hpp"

namespace test_helpers {

using cd = std::complex<double>;

// Rising exponential of the given rate cut at t = 0, sampled on a grid whose
// nodes straddle t = 0 by half a step; keeps plain trapezoid sums second
// order at the cut.
inline coupler::PulseEnvelope offset_rising_pulse(double rate, double t_span,
                                                  double dt,
                                                  double tail_span = 1.0) {
  const std::size_t n =
      static_cast<std::size_t>((t_span + tail_span) / dt) + 1;
  coupler::PulseEnvelope env{-t_span + 0.5 * dt, dt, std::vector<cd>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double t = env.time(i);
    env.samples[i] = t < 0.0 ? std::exp(0.5 * rate * t) : 0.0;
  }
  return env;
}

enum class MapPolarization { radial, circular, horizontal };

// Synthetic Stokes map of a fully polarized beam on an n x n grid spanning
// [-extent, extent]. The amplitude profile is a function of (r, azimuth) in
// the beam frame; `rotation` turns the beam pattern about the pupil centre
// while the grid stays put. Radial polarization is defined about the centre
// and is rotation-covariant by construction.
inline coupler::StokesMap make_stokes_map(
    std::size_t n, double extent,
    const std::function<double(double, double)>& amplitude, MapPolarization pol,
    double unpolarized = 0.0, double rotation = 0.0) {
  coupler::StokesMap map;
  map.nx = map.ny = n;
  map.dx = map.dy = 2.0 * extent / static_cast<double>(n - 1);
  map.x0 = map.y0 = -extent;
  map.pupil_center_x = map.pupil_center_y = 0.0;
  map.pupil_radius = extent;
  const std::size_t total = n * n;
  map.s0.resize(total);
  map.s1.resize(total);
  map.s2.resize(total);
  map.s3.resize(total);
  map.flagged.assign(total, false);
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      const std::size_t i = map.index(ix, iy);
      const double x = map.x_at(ix);
      const double y = map.y_at(iy);
      const double r = std::hypot(x, y);
      const double az = r > 0.0 ? std::atan2(y, x) : 0.0;
      const double a = amplitude(r, az - rotation);
      const double intensity = a * a;
      map.s0[i] = intensity + unpolarized;
      switch (pol) {
        case MapPolarization::radial:
          map.s1[i] = intensity * std::cos(2.0 * az);
          map.s2[i] = intensity * std::sin(2.0 * az);
          map.s3[i] = 0.0;
          break;
        case MapPolarization::circular:
          map.s1[i] = 0.0;
          map.s2[i] = 0.0;
          map.s3[i] = intensity;
          break;
        case MapPolarization::horizontal:
          map.s1[i] = intensity;
          map.s2[i] = 0.0;
          map.s3[i] = 0.0;
          break;
      }
    }
  }
  return map;
}

}  // namespace test_helpers

#endif
