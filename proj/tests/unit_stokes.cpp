#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "coupler/errors.hpp"
#include "coupler/pupil.hpp"
#include "coupler/stokes.hpp"
#include "helpers.hpp"

using namespace coupler;
using test_helpers::MapPolarization;
using test_helpers::make_stokes_map;

namespace {

const MirrorGeometry geom{1.0, 5.67, 0.0};

double ideal_amp(double r, double pupil_radius) {
  const double scale = geom.rim_radius() / pupil_radius;
  return ideal_pupil_profile(r * scale, 1.0);
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("stokes map round-trips through CSV") {
  const double extent = 1.0;
  const StokesMap map = make_stokes_map(
      16, extent, [&](double r, double) { return ideal_amp(r, extent); },
      MapPolarization::radial);
  const std::string path = temp_path("round_trip_map.csv");
  write_stokes_map(map, path);
  const StokesMap back = parse_stokes_map(path);
  REQUIRE(back.nx == 16);
  REQUIRE(back.ny == 16);
  CHECK(back.pixel_count() == 256);
  for (std::size_t i = 0; i < back.pixel_count(); ++i) {
    CHECK(back.s0[i] == doctest::Approx(map.s0[i]).epsilon(1e-12));
    CHECK(back.s1[i] == doctest::Approx(map.s1[i]).epsilon(1e-12));
    CHECK(back.s2[i] == doctest::Approx(map.s2[i]).epsilon(1e-12));
    CHECK(back.s3[i] == doctest::Approx(map.s3[i]).epsilon(1e-12));
  }
  CHECK(back.flagged_count() == 0);
  std::filesystem::remove(path);
}

TEST_CASE("parser flags non-physical pixels instead of rejecting them") {
  StokesMap map = make_stokes_map(
      8, 1.0, [&](double r, double) { return ideal_amp(r, 1.0); },
      MapPolarization::radial);
  map.s1[10] = 2.0 * map.s0[10] + 1.0;  // polarized part exceeds S0
  const std::string path = temp_path("flagged_map.csv");
  write_stokes_map(map, path);
  const StokesMap back = parse_stokes_map(path);
  CHECK(back.flagged_count() == 1);
  CHECK(back.flagged[10]);
  std::filesystem::remove(path);
}

TEST_CASE("parser reports malformed input with a line number") {
  const std::string path = temp_path("bad_map.csv");
  {
    std::ofstream f(path);
    f << "x,y,S0,S1,S2,S3\n";
    f << "0,0,1,0,0,0\n";
    f << "1,0,1,zero,0,0\n";
  }
  CHECK_THROWS_WITH_AS(parse_stokes_map(path), doctest::Contains(":3:"), ParseError);

  {
    std::ofstream f(path);
    f << "x,y,S0,S1\n0,0,1,0\n";
  }
  CHECK_THROWS_AS(parse_stokes_map(path), ParseError);

  {
    // jittered grid spacing
    std::ofstream f(path);
    f << "x,y,S0,S1,S2,S3\n";
    f << "0,0,1,0,0,0\n1,0,1,0,0,0\n";
    f << "0,1,1,0,0,0\n1.5,1,1,0,0,0\n";
  }
  CHECK_THROWS_AS(parse_stokes_map(path), ParseError);
  std::filesystem::remove(path);
}

TEST_CASE("field reconstruction from Stokes parameters") {
  // pure horizontal linear light
  StokesMap map = make_stokes_map(
      4, 1.0, [](double, double) { return 2.0; }, MapPolarization::horizontal);
  ReconstructedField f = reconstruct_field(map);
  CHECK(f.pixels[5].psi == doctest::Approx(0.0));
  CHECK(f.pixels[5].chi == doctest::Approx(0.0));
  CHECK(f.pixels[5].amplitude == doctest::Approx(2.0));

  // pure circular light
  map = make_stokes_map(4, 1.0, [](double, double) { return 3.0; },
                        MapPolarization::circular);
  f = reconstruct_field(map);
  CHECK(f.pixels[5].chi == doctest::Approx(pi / 4.0));
  CHECK(f.pixels[5].amplitude == doctest::Approx(3.0));

  // radial doughnut: orientation equals the azimuth (mod pi) everywhere
  map = make_stokes_map(
      32, 1.0, [](double r, double) { return r * std::exp(-r * r); },
      MapPolarization::radial);
  f = reconstruct_field(map);
  for (std::size_t iy = 0; iy < map.ny; ++iy)
    for (std::size_t ix = 0; ix < map.nx; ++ix) {
      const std::size_t i = map.index(ix, iy);
      if (f.pixels[i].null_pixel) continue;
      const double az = std::atan2(map.y_at(iy), map.x_at(ix));
      const double diff = std::remainder(f.pixels[i].psi - az, pi);
      CHECK(std::abs(diff) <= 1e-9);
    }

  // unpolarized pixel is null
  map.s1[0] = map.s2[0] = map.s3[0] = 0.0;
  map.s0[0] = 1.0;
  f = reconstruct_field(map);
  CHECK(f.pixels[0].null_pixel);
  CHECK(f.pixels[0].amplitude == 0.0);
  CHECK(f.pixels[0].unpolarized == doctest::Approx(1.0));
}

TEST_CASE("reconstruction reproduces the polarized Stokes components") {
  const StokesMap map = make_stokes_map(
      24, 1.0, [&](double r, double az) { return ideal_amp(r, 1.0) * (1.0 + 0.2 * std::cos(az)); },
      MapPolarization::radial);
  const ReconstructedField f = reconstruct_field(map);
  for (std::size_t i = 0; i < map.pixel_count(); ++i) {
    if (f.pixels[i].null_pixel) continue;
    const double ip = f.pixels[i].amplitude * f.pixels[i].amplitude;
    const double s1 = ip * std::cos(2.0 * f.pixels[i].chi) * std::cos(2.0 * f.pixels[i].psi);
    const double s2 = ip * std::cos(2.0 * f.pixels[i].chi) * std::sin(2.0 * f.pixels[i].psi);
    const double s3 = ip * std::sin(2.0 * f.pixels[i].chi);
    CHECK(s1 == doctest::Approx(map.s1[i]).epsilon(1e-9));
    CHECK(s2 == doctest::Approx(map.s2[i]).epsilon(1e-9));
    CHECK(s3 == doctest::Approx(map.s3[i]).epsilon(1e-9));
  }
}

TEST_CASE("measured eta on synthetic maps") {
  const double extent = 1.0;
  // the ideal pattern itself scores one
  const StokesMap ideal_map = make_stokes_map(
      128, extent, [&](double r, double) { return ideal_amp(r, extent); },
      MapPolarization::radial);
  const EtaReport self = measured_eta(reconstruct_field(ideal_map), geom);
  CHECK(self.eta == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(self.unpolarized_fraction == doctest::Approx(0.0));
  CHECK(self.flagged_pixels == 0);
  CHECK(self.pupil_coverage == doctest::Approx(1.0).epsilon(0.05));

  // uniform circular polarization projects at 1/sqrt(2)
  const StokesMap circular_map = make_stokes_map(
      128, extent, [&](double r, double) { return ideal_amp(r, extent); },
      MapPolarization::circular);
  const EtaReport circ = measured_eta(reconstruct_field(circular_map), geom);
  CHECK(circ.eta == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));

  // global intensity rescaling changes nothing
  StokesMap bright = ideal_map;
  for (std::size_t i = 0; i < bright.pixel_count(); ++i) {
    bright.s0[i] *= 2.7e3;
    bright.s1[i] *= 2.7e3;
    bright.s2[i] *= 2.7e3;
    bright.s3[i] *= 2.7e3;
  }
  CHECK(measured_eta(reconstruct_field(bright), geom).eta ==
        doctest::Approx(self.eta).epsilon(1e-12));

  // unpolarized light is excluded from eta but reported
  const StokesMap hazy = make_stokes_map(
      128, extent, [&](double r, double) { return ideal_amp(r, extent); },
      MapPolarization::radial, 0.05);
  const EtaReport haze = measured_eta(reconstruct_field(hazy), geom);
  CHECK(haze.eta == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(haze.unpolarized_fraction > 0.01);
}

TEST_CASE("measured eta is invariant under map rotations") {
  const double extent = 1.0;
  auto modulated = [&](double r, double az) {
    return ideal_amp(r, extent) * (1.0 + 0.25 * std::cos(4.0 * az));
  };
  const StokesMap base =
      make_stokes_map(96, extent, modulated, MapPolarization::radial);
  const double eta0 = measured_eta(reconstruct_field(base), geom).eta;

  // quarter-turn rotations map the pixel grid onto itself: exact equality
  for (double angle : {0.5 * pi, pi, 1.5 * pi}) {
    const StokesMap rotated = make_stokes_map(96, extent, modulated,
                                              MapPolarization::radial, 0.0, angle);
    CHECK(measured_eta(reconstruct_field(rotated), geom).eta ==
          doctest::Approx(eta0).epsilon(1e-9));
  }

  // arbitrary rotation of a radially symmetric beam: exact by symmetry
  const StokesMap sym = make_stokes_map(
      96, extent, [&](double r, double) { return ideal_amp(r, extent) + 0.1 * r; },
      MapPolarization::radial);
  const double eta_sym = measured_eta(reconstruct_field(sym), geom).eta;
  const StokesMap sym_rot = make_stokes_map(
      96, extent, [&](double r, double) { return ideal_amp(r, extent) + 0.1 * r; },
      MapPolarization::radial, 0.0, 0.588);
  CHECK(measured_eta(reconstruct_field(sym_rot), geom).eta ==
        doctest::Approx(eta_sym).epsilon(1e-6));
}

TEST_CASE("flagged pixels are excluded from the overlap") {
  StokesMap map = make_stokes_map(
      64, 1.0, [&](double r, double) { return ideal_amp(r, 1.0); },
      MapPolarization::radial);
  const double clean = measured_eta(reconstruct_field(map), geom).eta;
  // corrupt one interior pixel violently, then flag it
  const std::size_t victim = map.index(40, 32);
  map.s1[victim] = 50.0 * map.s0[victim] + 10.0;
  map.flagged[victim] = true;
  const EtaReport report = measured_eta(reconstruct_field(map), geom);
  CHECK(report.flagged_pixels == 1);
  CHECK(report.eta == doctest::Approx(clean).epsilon(1e-3));
}

TEST_CASE("insufficient pupil coverage raises") {
  StokesMap map = make_stokes_map(
      32, 1.0, [&](double r, double) { return ideal_amp(r, 1.0); },
      MapPolarization::radial);
  map.pupil_radius = 10.0;  // grid covers a sliver of the pupil disc
  CHECK_THROWS_AS(measured_eta(reconstruct_field(map), geom), DomainError);
}
