#include "coupler/stokes.hpp"

#include <algorithm>
#include <cmath>

#include "coupler/csvio.hpp"
#include "coupler/errors.hpp"
#include "coupler/pupil.hpp"

namespace coupler {

namespace {

constexpr double physicality_slack = 1e-6;  // measurement slack on the Stokes cone

bool physical(double s0, double s1, double s2, double s3) {
  if (s0 < 0.0) return false;
  const double pol = s1 * s1 + s2 * s2 + s3 * s3;
  return pol <= s0 * s0 * (1.0 + physicality_slack);
}

}  // namespace

std::size_t StokesMap::flagged_count() const {
  return static_cast<std::size_t>(std::count(flagged.begin(), flagged.end(), true));
}

StokesMap parse_stokes_map(const std::string& path) {
  const csv::Table table = csv::read_table(path, "x,y,S0,S1,S2,S3");
  if (table.rows.size() < 4)
    throw ParseError(path + ": need at least a 2x2 grid of pixels");

  StokesMap map;
  map.x0 = table.rows[0][0];
  map.y0 = table.rows[0][1];

  // row-major with x running fastest: count pixels until y changes
  std::size_t nx = 0;
  for (const auto& row : table.rows) {
    if (row[1] != map.y0) break;
    ++nx;
  }
  if (nx < 2 || table.rows.size() % nx != 0)
    throw ParseError(path + ": rows do not form a complete row-major grid");
  map.nx = nx;
  map.ny = table.rows.size() / nx;
  if (map.ny < 2) throw ParseError(path + ": need at least two grid lines in y");
  map.dx = table.rows[1][0] - map.x0;
  map.dy = table.rows[nx][1] - map.y0;
  if (map.dx <= 0.0 || map.dy <= 0.0)
    throw ParseError(path + ": grid coordinates must increase");

  const std::size_t n = table.rows.size();
  map.s0.resize(n);
  map.s1.resize(n);
  map.s2.resize(n);
  map.s3.resize(n);
  map.flagged.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = table.rows[i];
    const std::size_t ix = i % nx;
    const std::size_t iy = i / nx;
    const double ex = map.x_at(ix);
    const double ey = map.y_at(iy);
    // data line i lives on file line i + 2 (header is line 1)
    const std::string where = path + ":" + std::to_string(i + 2);
    if (std::abs(row[0] - ex) > 1e-6 * std::max(std::abs(ex), map.dx) ||
        std::abs(row[1] - ey) > 1e-6 * std::max(std::abs(ey), map.dy))
      throw ParseError(where + ": non-uniform grid spacing or out-of-order pixel");
    map.s0[i] = row[2];
    map.s1[i] = row[3];
    map.s2[i] = row[4];
    map.s3[i] = row[5];
    map.flagged[i] = !physical(row[2], row[3], row[4], row[5]);
  }

  map.pupil_center_x = map.x0 + 0.5 * (map.nx - 1) * map.dx;
  map.pupil_center_y = map.y0 + 0.5 * (map.ny - 1) * map.dy;
  map.pupil_radius = 0.5 * std::min((map.nx - 1) * map.dx, (map.ny - 1) * map.dy);
  return map;
}

void write_stokes_map(const StokesMap& map, const std::string& path) {
  std::vector<std::vector<double>> rows;
  rows.reserve(map.pixel_count());
  for (std::size_t iy = 0; iy < map.ny; ++iy)
    for (std::size_t ix = 0; ix < map.nx; ++ix) {
      const std::size_t i = map.index(ix, iy);
      rows.push_back(
          {map.x_at(ix), map.y_at(iy), map.s0[i], map.s1[i], map.s2[i], map.s3[i]});
    }
  csv::write_table(path, "x,y,S0,S1,S2,S3", rows);
}

ReconstructedField reconstruct_field(const StokesMap& map) {
  ReconstructedField field;
  field.map = &map;
  field.pixels.resize(map.pixel_count());
  for (std::size_t i = 0; i < map.pixel_count(); ++i) {
    FieldPixel& px = field.pixels[i];
    const double polarized = std::sqrt(map.s1[i] * map.s1[i] +
                                       map.s2[i] * map.s2[i] +
                                       map.s3[i] * map.s3[i]);
    px.unpolarized = map.s0[i] - polarized;
    if (polarized <= 0.0) {
      px.null_pixel = true;
      continue;
    }
    px.amplitude = std::sqrt(polarized);
    px.psi = 0.5 * std::atan2(map.s2[i], map.s1[i]);
    px.chi = 0.5 * std::asin(std::clamp(map.s3[i] / polarized, -1.0, 1.0));
  }
  return field;
}

EtaReport measured_eta(const ReconstructedField& field, const MirrorGeometry& geom) {
  geom.validate();
  if (field.map == nullptr || field.pixels.size() != field.map->pixel_count())
    throw DomainError("measured_eta: field does not match its map");
  const StokesMap& map = *field.map;
  if (map.pupil_radius <= 0.0)
    throw DomainError("measured_eta: pupil radius must be positive");

  // ideal pattern scaled so the pupil rim sits at the mirror's rim radius
  const double scale = geom.rim_radius() / map.pupil_radius;

  double num = 0.0;
  double power_meas = 0.0;
  double power_ideal = 0.0;
  double total_s0 = 0.0;
  double total_unpol = 0.0;
  std::size_t inside = 0;
  std::size_t flagged_inside = 0;

  for (std::size_t iy = 0; iy < map.ny; ++iy) {
    for (std::size_t ix = 0; ix < map.nx; ++ix) {
      const double x = map.x_at(ix) - map.pupil_center_x;
      const double y = map.y_at(iy) - map.pupil_center_y;
      const double rho = std::hypot(x, y);
      if (rho > map.pupil_radius) continue;
      ++inside;
      const std::size_t i = map.index(ix, iy);
      if (map.flagged[i]) {
        ++flagged_inside;
        continue;
      }
      const double ideal = ideal_pupil_profile(rho * scale, geom.focal_length);
      power_ideal += ideal * ideal;
      total_s0 += map.s0[i];
      const FieldPixel& px = field.pixels[i];
      total_unpol += px.unpolarized;
      if (px.null_pixel) continue;
      power_meas += px.amplitude * px.amplitude;
      const double azimuth = (rho > 0.0) ? std::atan2(y, x) : 0.0;
      // amplitude of the ellipse's projection onto the radial direction
      const double rel = px.psi - azimuth;
      const double c = std::cos(rel);
      const double s = std::sin(rel);
      const double cc = std::cos(px.chi);
      const double sc = std::sin(px.chi);
      const double projection = std::sqrt(cc * cc * c * c + sc * sc * s * s);
      num += px.amplitude * projection * ideal;
    }
  }

  const double disc_area = pi * map.pupil_radius * map.pupil_radius;
  const double coverage = static_cast<double>(inside) * map.dx * map.dy / disc_area;
  if (coverage < 0.5)
    throw DomainError("measured_eta: grid covers less than half of the pupil disc");
  if (power_meas <= 0.0 || power_ideal <= 0.0)
    throw DomainError("measured_eta: no polarized light inside the pupil");

  EtaReport report;
  report.eta = num / std::sqrt(power_meas * power_ideal);
  report.unpolarized_fraction = total_s0 > 0.0 ? total_unpol / total_s0 : 0.0;
  report.flagged_pixels = flagged_inside;
  report.pupil_coverage = std::min(coverage, 1.0);
  return report;
}

}  // namespace coupler
