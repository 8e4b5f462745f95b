#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "coupler/cw.hpp"
#include "coupler/errors.hpp"
#include "coupler/spectral.hpp"
#include "helpers.hpp"

using namespace coupler;
using cd = std::complex<double>;

namespace {

PulseEnvelope unit_rising(double gamma, double dt, double span) {
  const std::size_t n = static_cast<std::size_t>(2.0 * span / dt);
  PulseEnvelope env{-span + 0.5 * dt, dt, std::vector<cd>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double t = env.time(i);
    env.samples[i] = t < 0.0 ? std::sqrt(gamma) * std::exp(0.5 * gamma * t) : 0.0;
  }
  return env;
}

// trapezoid convolution with the atom's impulse response; test-side oracle
PulseEnvelope convolution_oracle(const PulseEnvelope& env, double g, double gamma) {
  const std::size_t n = env.size();
  PulseEnvelope out{env.t0, env.dt, std::vector<cd>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    cd acc = 0.0;
    for (std::size_t j = 0; j <= i; ++j) {
      const double x = (static_cast<double>(i) - static_cast<double>(j)) * env.dt;
      const double h = (j == i) ? 0.25 * gamma : 0.5 * gamma * std::exp(-0.5 * gamma * x);
      const double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
      acc += w * h * env.samples[j];
    }
    out.samples[i] = env.samples[i] - 2.0 * g * acc * env.dt;
  }
  return out;
}

}  // namespace

TEST_CASE("scatter_pulse: transparent and absorbing limits") {
  const double gamma = 1.0;
  const PulseEnvelope env = unit_rising(gamma, 1.0 / 512.0, 24.0);

  // G = 0 leaves the pulse untouched
  const PulseEnvelope same = scatter_pulse(env, 0.0, gamma);
  double diff = 0.0;
  for (std::size_t i = 0; i < env.size(); ++i)
    diff = std::max(diff, std::abs(same.samples[i] - env.samples[i]));
  CHECK(diff <= 1e-12);

  // matched pulse splits into (1-G) rising and -G decaying parts
  for (double g : {0.25, 0.5, 0.9, 1.0}) {
    const PulseEnvelope out = scatter_pulse(env, g, gamma);
    double err2 = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double t = out.time(i);
      const double expected = t < 0.0
                                  ? (1.0 - g) * std::sqrt(gamma) * std::exp(0.5 * gamma * t)
                                  : -g * std::sqrt(gamma) * std::exp(-0.5 * gamma * t);
      err2 += std::norm(out.samples[i] - cd(expected));
    }
    CHECK(err2 * out.dt <= 1e-8);  // energy of the deviation from the analytic form
  }
}

TEST_CASE("scatter_pulse matches the convolution oracle") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double gamma = 0.5 + 1.5 * uni(rng);
    const double g = uni(rng);
    const double detuning = 0.0;
    const double dt = 1.0 / (96.0 * gamma);
    const double span = 21.0 / gamma;
    const std::size_t n = static_cast<std::size_t>(2.0 * span / dt);
    PulseEnvelope env{-span, dt, std::vector<cd>(n)};
    const double sigma = (0.7 + uni(rng)) / gamma;
    const double center = (uni(rng) - 0.5) * 6.0 / gamma;
    const double omega = (uni(rng) - 0.5) * 3.0 * gamma;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = env.time(i);
      const double x = (t - center) / sigma;
      env.samples[i] = std::exp(-0.5 * x * x) * std::polar(1.0, omega * t);
    }
    const PulseEnvelope fft = scatter_pulse(env, g, gamma, detuning);
    const PulseEnvelope ref = convolution_oracle(env, g, gamma);
    double diff2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      diff2 += std::norm(fft.samples[i] - ref.samples[i]);
    CHECK(diff2 * dt / env.energy() <= 1e-8);
  }
}

TEST_CASE("scatter_pulse validates the grid") {
  const PulseEnvelope narrow = unit_rising(1.0, 0.01, 5.0);
  CHECK_THROWS_AS(scatter_pulse(narrow, 0.5, 1.0), DomainError);
  const PulseEnvelope wide = unit_rising(1.0, 0.01, 25.0);
  CHECK_THROWS_AS(scatter_pulse(wide, 1.5, 1.0), DomainError);
  CHECK_THROWS_AS(scatter_pulse(wide, 0.5, 0.0), DomainError);
}

TEST_CASE("mode transfer function is passive") {
  for (double g = 0.0; g <= 1.0; g += 0.1) {
    for (double d = -50.0; d <= 50.0; d += 0.25) {
      CHECK(std::abs(transmission_amplitude(g, 1.0, d)) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("decompose_exponentials") {
  const double gamma = 1.0;
  const double dt = 1.0 / 2048.0;
  const PulseEnvelope rising = unit_rising(gamma, dt, 24.0);

  // a pure rising input lies entirely in the span; the residual is
  // quadrature- and truncation-limited, so probe it on a fine, wide grid
  const ExpDecomposition pure =
      decompose_exponentials(unit_rising(gamma, 1.0 / 32768.0, 30.0), gamma);
  CHECK(pure.c_rise.real() == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(std::abs(pure.c_decay) <= 1e-9);
  CHECK(pure.residual_energy_fraction <= 1e-10);

  // scattered outputs land on (1-G, -G)
  for (double g : {0.0, 0.25, 0.5, 0.9, 1.0}) {
    const ExpDecomposition dec =
        decompose_exponentials(scatter_pulse(rising, g, gamma), gamma);
    CHECK(dec.c_rise.real() == doctest::Approx(1.0 - g).epsilon(1e-6));
    CHECK(std::abs(dec.c_rise.imag()) <= 1e-6);
    CHECK(dec.c_decay.real() == doctest::Approx(-g).epsilon(1e-6));
    CHECK(dec.residual_energy_fraction <= 1e-6);
  }

  // inputs inside the span reproduce themselves
  PulseEnvelope combo = unit_rising(gamma, 1.0 / 32768.0, 30.0);
  for (std::size_t i = 0; i < combo.size(); ++i) {
    const double t = combo.time(i);
    combo.samples[i] = t < 0.0 ? 0.3 * std::sqrt(gamma) * std::exp(0.5 * gamma * t)
                               : cd(0.0, -0.8) * std::sqrt(gamma) *
                                     std::exp(-0.5 * gamma * t);
  }
  const ExpDecomposition dec = decompose_exponentials(combo, gamma);
  CHECK(dec.c_rise.real() == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(dec.c_decay.imag() == doctest::Approx(-0.8).epsilon(1e-6));
  CHECK(dec.residual_energy_fraction <= 1e-10);

  CHECK_THROWS_AS(decompose_exponentials(PulseEnvelope{1.0, 0.1,
                                                       std::vector<cd>(32, 1.0)},
                                         gamma),
                  DomainError);
}

TEST_CASE("scatter_pulse is linear") {
  const double gamma = 1.0;
  const double dt = 1.0 / 256.0;
  const double span = 22.0;
  const std::size_t n = static_cast<std::size_t>(2.0 * span / dt);
  PulseEnvelope p1{-span, dt, std::vector<cd>(n)};
  PulseEnvelope p2{-span, dt, std::vector<cd>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double t = p1.time(i);
    p1.samples[i] = std::exp(-0.5 * (t + 2.0) * (t + 2.0));
    p2.samples[i] = std::exp(-0.25 * (t - 1.0) * (t - 1.0)) * cd(0.0, 1.0);
  }
  const cd a(0.7, -0.2), b(-0.4, 1.1);
  PulseEnvelope combo = p1;
  for (std::size_t i = 0; i < n; ++i)
    combo.samples[i] = a * p1.samples[i] + b * p2.samples[i];

  const PulseEnvelope s1 = scatter_pulse(p1, 0.6, gamma);
  const PulseEnvelope s2 = scatter_pulse(p2, 0.6, gamma);
  const PulseEnvelope sc = scatter_pulse(combo, 0.6, gamma);
  double diff2 = 0.0, norm2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cd expect = a * s1.samples[i] + b * s2.samples[i];
    diff2 += std::norm(sc.samples[i] - expect);
    norm2 += std::norm(expect);
  }
  CHECK(std::sqrt(diff2 / norm2) <= 1e-10);
}

TEST_CASE("energy budget") {
  const double gamma = 1.0;
  const PulseEnvelope rising = unit_rising(gamma, 1.0 / 512.0, 24.0);
  for (double g : {0.0, 0.5, 1.0}) {
    const PulseEnvelope out = scatter_pulse(rising, g, gamma);
    const EnergyBudget budget = energy_budget(rising, out, g);
    const double expected = (1.0 - g) * (1.0 - g) + g * g;
    CHECK(budget.in_mode_energy_fraction == doctest::Approx(expected).epsilon(1e-6));
    CHECK(std::abs(budget.out_of_mode_fraction - 2.0 * g * (1.0 - g)) <= 2e-6);
    CHECK(budget.matched_ideal_fraction == doctest::Approx(expected));
  }

  PulseEnvelope other{-24.0, 0.01, std::vector<cd>(64, 1.0)};
  CHECK_THROWS_AS(energy_budget(rising, other, 0.5), DomainError);
}
