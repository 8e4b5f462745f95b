#ifndef COUPLER_STOKES_HPP
#define COUPLER_STOKES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "coupler/geometry.hpp"

namespace coupler {

// Spatially resolved Stokes parameters on a uniform x-y lattice covering the
// mirror's entrance pupil. Coordinates are in pupil units; by default the
// pupil disc is centred on the grid and inscribed in it.
struct StokesMap {
  std::size_t nx = 0, ny = 0;
  double x0 = 0.0, y0 = 0.0;  // coordinates of pixel (0, 0)
  double dx = 1.0, dy = 1.0;
  std::vector<double> s0, s1, s2, s3;  // row-major, x fastest
  std::vector<bool> flagged;           // pixels violating S1^2+S2^2+S3^2 <= S0^2

  double pupil_center_x = 0.0, pupil_center_y = 0.0;
  double pupil_radius = 1.0;

  std::size_t index(std::size_t ix, std::size_t iy) const { return iy * nx + ix; }
  std::size_t pixel_count() const { return nx * ny; }
  double x_at(std::size_t ix) const { return x0 + static_cast<double>(ix) * dx; }
  double y_at(std::size_t iy) const { return y0 + static_cast<double>(iy) * dy; }
  std::size_t flagged_count() const;
};

// Reads `x,y,S0,S1,S2,S3` CSV data on a uniform row-major grid. Non-physical
// pixels are flagged, not rejected; malformed rows or non-uniform spacing
// (relative jitter above 1e-6) raise ParseError with the line number.
StokesMap parse_stokes_map(const std::string& path);

void write_stokes_map(const StokesMap& map, const std::string& path);

// Local polarization ellipse recovered from the fully polarized part of the
// Stokes vector.
struct FieldPixel {
  double amplitude = 0.0;    // sqrt of the polarized intensity
  double psi = 0.0;          // orientation angle of the ellipse
  double chi = 0.0;          // ellipticity angle
  double unpolarized = 0.0;  // S0 - sqrt(S1^2+S2^2+S3^2)
  bool null_pixel = false;   // no polarized light, orientation undefined
};

struct ReconstructedField {
  const StokesMap* map = nullptr;  // grid/pupil information source
  std::vector<FieldPixel> pixels;
};

ReconstructedField reconstruct_field(const StokesMap& map);

struct EtaReport {
  double eta = 0.0;
  double unpolarized_fraction = 0.0;
  std::size_t flagged_pixels = 0;
  double pupil_coverage = 0.0;
};

// Discrete overlap of the reconstructed transverse field with the ideal
// radially polarized dipole pattern of the given mirror; ellipticity enters
// through the projection onto the local radial direction. Pixels outside the
// pupil disc and flagged pixels are excluded.
EtaReport measured_eta(const ReconstructedField& field, const MirrorGeometry& geom);

}  // namespace coupler

#endif  // COUPLER_STOKES_HPP
