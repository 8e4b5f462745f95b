#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "coupler/config.hpp"
#include "coupler/csvio.hpp"
#include "coupler/errors.hpp"
#include "coupler/numerics.hpp"
#include "coupler/pulse_io.hpp"

using namespace coupler;

namespace {
std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}
}  // namespace

TEST_CASE("adaptive quadrature") {
  // smooth integrand with a known value
  const double v = numerics::integrate_adaptive(
      [](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-12);
  CHECK(v == doctest::Approx(std::sqrt(pi)).epsilon(1e-12));

  CHECK(numerics::integrate_adaptive([](double x) { return x; }, 2.0, 2.0) == 0.0);

  // an oscillation the depth budget cannot resolve (asymmetric so the
  // bisected estimates cannot cancel by luck)
  CHECK_THROWS_AS(numerics::integrate_adaptive(
                      [](double x) { return 2.0 + std::sin(1000.0 * x + 0.7); },
                      -1.0, 1.1, 1e-12, 5),
                  NumericalError);
}

TEST_CASE("golden section and bisection") {
  const auto [x, fx] = numerics::golden_min(
      [](double t) { return (t - 1.7) * (t - 1.7) + 0.3; }, -4.0, 6.0, 1e-10);
  CHECK(x == doctest::Approx(1.7).epsilon(1e-7));
  CHECK(fx == doctest::Approx(0.3).epsilon(1e-10));

  const double root = numerics::bisect_root(
      [](double t) { return t * t * t - 2.0; }, 0.0, 4.0, 1e-12);
  CHECK(root == doctest::Approx(std::cbrt(2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(numerics::bisect_root([](double t) { return t * t + 1.0; },
                                        -1.0, 1.0, 1e-10),
                  NumericalError);
}

TEST_CASE("csv formatting and parsing") {
  CHECK(csv::format_double(0.25) == "0.25");
  CHECK(csv::format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(csv::format_double(-6.9e-10) == "-6.9e-10");

  const std::string path = temp_path("misc_table.csv");
  csv::write_table(path, "a,b", {{1.0, 2.0}, {3.5, -4.25}});
  const csv::Table t = csv::read_table(path, "a,b");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1][1] == -4.25);

  CHECK_THROWS_AS(csv::read_table(path, "x,y"), ParseError);
  CHECK_THROWS_AS(csv::read_table("/nonexistent/file.csv"), IoError);

  {
    std::ofstream f(path);
    f << "a,b\n1,2\n3\n";
  }
  CHECK_THROWS_WITH_AS(csv::read_table(path), doctest::Contains(":3:"), ParseError);
  {
    std::ofstream f(path);
    f << "a,b\n1,huh\n";
  }
  CHECK_THROWS_AS(csv::read_table(path), ParseError);
  std::filesystem::remove(path);
}

TEST_CASE("envelope CSV round trip") {
  const std::string path = temp_path("misc_env.csv");
  PulseEnvelope env{-1e-8, 1e-10, {}};
  env.samples.resize(64);
  for (std::size_t i = 0; i < env.size(); ++i)
    env.samples[i] = {std::sin(0.1 * static_cast<double>(i)), 0.0};
  write_envelope_csv(env, path);
  PulseEnvelope back = read_envelope_csv(path);
  REQUIRE(back.size() == env.size());
  CHECK(back.dt == doctest::Approx(env.dt).epsilon(1e-9));
  for (std::size_t i = 0; i < env.size(); ++i)
    CHECK(back.samples[i].real() ==
          doctest::Approx(env.samples[i].real()).epsilon(1e-11));

  // complex envelopes round-trip through the three-column format
  env.samples[3] = {0.5, -0.25};
  write_envelope_csv(env, path);
  back = read_envelope_csv(path);
  CHECK(back.samples[3].imag() == doctest::Approx(-0.25).epsilon(1e-12));

  {
    std::ofstream f(path);
    f << "t_s,amplitude\n0,1\n1,1\n2.5,1\n";
  }
  CHECK_THROWS_AS(read_envelope_csv(path), ParseError);  // jittered grid
  std::filesystem::remove(path);
}

TEST_CASE("histogram CSV") {
  const std::string path = temp_path("misc_hist.csv");
  csv::write_table(path, "t_s,counts", {{0.0, 10.0}, {1.0, 20.0}, {2.0, 5.0}});
  const Histogram h = read_histogram_csv(path);
  CHECK(h.bin_width == doctest::Approx(1.0));
  CHECK(h.counts.size() == 3);
  csv::write_table(path, "t_s,counts", {{0.0, 10.0}, {1.0, -3.0}});
  CHECK_THROWS_AS(read_histogram_csv(path), ParseError);
  std::filesystem::remove(path);
}

TEST_CASE("run configuration") {
  RunConfig defaults;
  CHECK(defaults.hbar == doctest::Approx(1.054571817e-34));
  CHECK(defaults.c0 == 299792458.0);
  CHECK_NOTHROW(defaults.validate());

  const std::string path = temp_path("misc_config.json");
  {
    std::ofstream f(path);
    f << R"({"hbar": 2e-34, "output_dir": "/tmp/figs", "format": "json"})";
  }
  const RunConfig cfg = RunConfig::from_json_file(path);
  CHECK(cfg.hbar == 2e-34);
  CHECK(cfg.c0 == 299792458.0);  // untouched fields keep their defaults
  CHECK(cfg.output_dir == "/tmp/figs");
  CHECK(cfg.format == "json");

  {
    std::ofstream f(path);
    f << R"({"format": "xml"})";
  }
  CHECK_THROWS_AS(RunConfig::from_json_file(path), DomainError);
  {
    std::ofstream f(path);
    f << "{not json";
  }
  CHECK_THROWS_AS(RunConfig::from_json_file(path), ParseError);
  CHECK_THROWS_AS(RunConfig::from_json_file("/nonexistent.json"), IoError);
  std::filesystem::remove(path);
}
