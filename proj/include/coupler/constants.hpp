#ifndef COUPLER_CONSTANTS_HPP
#define COUPLER_CONSTANTS_HPP

namespace coupler {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// CODATA 2018
inline constexpr double hbar_si = 1.054571817e-34;  // J s
inline constexpr double speed_of_light = 299792458.0;  // m/s

// Total dipole-weighted solid angle of the full sphere, 8*pi/3.
inline constexpr double full_sphere_weight = 8.0 * pi / 3.0;

}  // namespace coupler

#endif  // COUPLER_CONSTANTS_HPP
