// dipole-coupler: command-line front end for the free-space photon-atom
// coupling toolbox. Every subcommand prints a deterministic machine-readable
// result; --json switches from key = value lines to a JSON object.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "coupler/acceptance.hpp"
#include "coupler/cavity.hpp"
#include "coupler/config.hpp"
#include "coupler/csvio.hpp"
#include "coupler/cw.hpp"
#include "coupler/errors.hpp"
#include "coupler/geometry.hpp"
#include "coupler/pulse_io.hpp"
#include "coupler/pulses.hpp"
#include "coupler/pupil.hpp"
#include "coupler/spectral.hpp"
#include "coupler/stokes.hpp"

namespace {

using coupler::DomainError;
using json = nlohmann::ordered_json;
using cd = std::complex<double>;

// ----------------------------------------------------------- unit parsing

struct Unit {
  const char* suffix;
  double scale;
};

double parse_with_units(const std::string& raw, const std::vector<Unit>& units,
                        double bare_scale, const std::string& what) {
  std::string s = raw;
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  double scale = bare_scale;
  std::size_t cut = s.size();
  // longest suffix wins (so "ns" is not read as "s")
  std::size_t best_len = 0;
  for (const Unit& u : units) {
    const std::string suffix(u.suffix);
    if (s.size() > suffix.size() && s.ends_with(suffix) &&
        suffix.size() > best_len) {
      best_len = suffix.size();
      scale = u.scale;
      cut = s.size() - suffix.size();
    }
  }
  const std::string digits = s.substr(0, cut);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size())
    throw DomainError("cannot parse " + what + " '" + raw + "'");
  return value * scale;
}

double parse_time(const std::string& s) {
  return parse_with_units(
      s, {{"ps", 1e-12}, {"ns", 1e-9}, {"us", 1e-6}, {"ms", 1e-3}, {"s", 1.0}},
      1.0, "time");
}

double parse_power(const std::string& s) {
  return parse_with_units(
      s, {{"pW", 1e-12}, {"nW", 1e-9}, {"uW", 1e-6}, {"mW", 1e-3}, {"W", 1.0}},
      1.0, "power");
}

double parse_angle(const std::string& s) {
  return parse_with_units(s, {{"deg", coupler::pi / 180.0}, {"rad", 1.0}}, 1.0,
                          "angle");
}

double parse_length(const std::string& s) {
  return parse_with_units(
      s, {{"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3}, {"m", 1.0}}, 1.0, "length");
}

// detunings are given in multiples of the linewidth ("0.5gamma" or bare)
double parse_detuning(const std::string& s, double gamma) {
  return parse_with_units(s, {{"gamma", gamma}}, gamma, "detuning");
}

double parse_cavity_detuning(const std::string& s, double kappa) {
  return parse_with_units(s, {{"kappa", kappa}}, kappa, "detuning");
}

// ----------------------------------------------------------- result output

struct Report {
  json data = json::object();
  bool as_json = false;

  void set(const std::string& key, double value) { data[key] = value; }
  void set(const std::string& key, const json& value) { data[key] = value; }

  void print() const {
    if (as_json) {
      std::cout << data.dump(2) << '\n';
      return;
    }
    for (const auto& [key, value] : data.items()) {
      if (value.is_number_float())
        std::cout << key << " = " << coupler::csv::format_double(value.get<double>())
                  << '\n';
      else
        std::cout << key << " = " << value.dump() << '\n';
    }
  }
};

coupler::DipoleSpec make_dipole(const std::string& kind, const std::string& tilt) {
  coupler::DipoleSpec spec;
  if (kind == "pi")
    spec.kind = coupler::DipoleKind::linear_pi;
  else if (kind == "sigma")
    spec.kind = coupler::DipoleKind::circular_sigma;
  else
    throw DomainError("dipole kind must be 'pi' or 'sigma'");
  spec.axis_tilt = parse_angle(tilt);
  return spec;
}

coupler::PulseEnvelope matched_cavity_pulse(double rate, double kappa,
                                            double t_tail) {
  const double dt = 1e-3 / kappa;
  const double t_start = -40.0 / std::min(rate, kappa);
  const std::size_t n_rise = static_cast<std::size_t>(-t_start / dt) + 1;
  const std::size_t n_tail = static_cast<std::size_t>(t_tail / dt);
  coupler::PulseEnvelope pulse{-(static_cast<double>(n_rise) - 1.0) * dt, dt,
                               std::vector<cd>(n_rise + n_tail, cd(0.0))};
  for (std::size_t i = 0; i < n_rise; ++i)
    pulse.samples[i] = std::sqrt(rate) * std::exp(0.5 * rate * pulse.time(i));
  return pulse;
}

// ----------------------------------------------------------- figure data

void emit_fig1(const std::string& dir) {
  const coupler::DipoleSpec axial_pi{coupler::DipoleKind::linear_pi, 0.0};
  const coupler::DipoleSpec axial_sigma{coupler::DipoleKind::circular_sigma, 0.0};
  const coupler::DipoleSpec perp_pi{coupler::DipoleKind::linear_pi,
                                    coupler::pi / 2.0};
  const double lens1 = coupler::omega_lens(0.95, 1, perp_pi);
  const double lens2 = coupler::omega_lens(0.95, 2, perp_pi);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i <= 1000; ++i) {
    const double hf = 0.01 * i;
    const coupler::MirrorGeometry geom{1.0, hf, 0.0};
    rows.push_back({hf,
                    coupler::weighted_solid_angle(geom.angular_range(), axial_pi),
                    coupler::weighted_solid_angle(geom.angular_range(), axial_sigma),
                    lens1, lens2});
  }
  coupler::csv::write_table(
      dir + "/fig1_weighted_solid_angle.csv",
      "hf,omega_pi,omega_sigma,omega_one_lens_na095,omega_two_lens_na095", rows);
  std::cout << dir << "/fig1_weighted_solid_angle.csv\n";
}

void emit_fig2b(const std::string& dir) {
  const coupler::MirrorGeometry geom{1.0, 5.67, 0.0};
  const double r_max = geom.rim_radius();
  const coupler::RadialPupilField ideal = coupler::RadialPupilField::ideal(1.0, r_max);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i <= 1100; ++i) {
    const double w = 0.5 + 0.005 * i;
    rows.push_back({w, coupler::pupil_overlap(
                           coupler::RadialPupilField::doughnut(w, r_max), ideal)});
  }
  coupler::csv::write_table(dir + "/fig2b_overlap_vs_waist.csv", "w_over_f,eta", rows);
  std::cout << dir << "/fig2b_overlap_vs_waist.csv\n";
}

void emit_fig6(const std::string& dir) {
  struct Case {
    const char* name;
    double lifetime_s;
    double t_start, t_stop, dt;
  };
  const Case cases[] = {
      {"fig6a_lifetime_8ns.csv", 8.1e-9, -60e-9, 8e-9, 0.05e-9},
      {"fig6b_lifetime_230ns.csv", 230e-9, -1200e-9, 8e-9, 1e-9},
  };
  const double ramp = 5e-9;
  for (const Case& c : cases) {
    const double gamma = 1.0 / c.lifetime_s;
    std::vector<std::vector<double>> rows;
    for (double t = c.t_start; t <= c.t_stop + 0.5 * c.dt; t += c.dt) {
      double model = 0.0;
      if (t <= 0.0)
        model = std::exp(0.5 * gamma * t);
      else if (t < ramp)
        model = std::sqrt(1.0 - t / ramp);
      const double ideal = t <= 0.0 ? std::exp(0.5 * gamma * t) : 0.0;
      rows.push_back({t, model, ideal});
    }
    coupler::csv::write_table(dir + "/" + c.name,
                              "t_s,model_amplitude,ideal_amplitude", rows);
    std::cout << dir << "/" << c.name << '\n';
  }
}

void emit_fig7(const std::string& dir) {
  const double decay = 39e-9;
  for (const bool detuned : {false, true}) {
    coupler::CavityParams params =
        coupler::CavityParams::from_decay_time(0.9796, 0.9994, decay);
    if (detuned) params.detuning = 50.0 * params.kappa;
    const coupler::PulseEnvelope pulse =
        matched_cavity_pulse(params.kappa, params.kappa, 150e-9);
    const coupler::CavityResponse resp = coupler::simulate_reflection(pulse, params);
    const std::string name =
        dir + (detuned ? "/fig7_detuned.csv" : "/fig7_resonant.csv");
    coupler::write_cavity_trace_csv(pulse, resp, name);
    std::cout << name << '\n';
  }
}

void emit_fig9(const std::string& dir, const coupler::RunConfig& cfg) {
  const double gamma = 1.0 / 8.1e-9;
  const double omega0 = coupler::two_pi * cfg.c0 / 370e-9;
  const coupler::CouplingParams params{0.024, gamma, 0.5 * gamma, omega0};
  std::vector<std::vector<double>> rows;
  for (int i = 0; i <= 120; ++i) {
    const double p = 1e-11 * std::pow(10.0, i / 30.0);
    const double s = coupler::saturation_parameter(p, params, cfg.hbar);
    rows.push_back({p, s, coupler::fluorescence_rate(s, gamma)});
  }
  coupler::csv::write_table(dir + "/fig9_saturation_curve.csv",
                            "power_W,saturation,rate_per_s", rows);
  std::cout << dir << "/fig9_saturation_curve.csv\n";
}

}  // namespace

int main(int argc, char** argv) {
  coupler::RunConfig cfg;
  CLI::App app{"free-space photon-atom coupling toolbox"};
  app.require_subcommand(1);
  int exit_code = 0;

  try {
    cfg = coupler::RunConfig::load_from_env();

    // ------------------------------------------------------- solid-angle
    auto* sa = app.add_subcommand("solid-angle",
                                  "weighted solid angle of a mirror or lens pair");
    double sa_hf = -1.0, sa_na = -1.0;
    int sa_lenses = 2, sa_parallel = 1;
    std::string sa_dipole = "pi", sa_tilt = "0", sa_hole = "0", sa_out;
    bool sa_sweep = false, sa_json = false;
    sa->add_option("--hf", sa_hf, "mirror depth over focal length");
    sa->add_option("--lens-na", sa_na, "numerical aperture of the lens setup");
    sa->add_option("--lenses", sa_lenses, "1 or 2 opposing lenses")
        ->check(CLI::IsMember({1, 2}));
    sa->add_option("--dipole", sa_dipole, "pi or sigma")
        ->check(CLI::IsMember({"pi", "sigma"}));
    sa->add_option("--tilt", sa_tilt, "dipole axis tilt (rad or deg suffix)");
    sa->add_option("--hole", sa_hole, "central hole half-angle");
    sa->add_flag("--sweep", sa_sweep, "emit the full depth-ratio sweep as CSV");
    sa->add_option("--out", sa_out, "write the sweep CSV here instead of stdout");
    sa->add_option("--parallel", sa_parallel, "worker threads for the sweep")
        ->check(CLI::PositiveNumber);
    sa->add_flag("--json", sa_json, "JSON output");
    sa->callback([&] {
      const coupler::DipoleSpec spec = make_dipole(sa_dipole, sa_tilt);
      if (sa_sweep) {
        const int n = 1001;
        std::vector<std::vector<double>> rows(n);
        auto work = [&](int begin, int end) {
          const coupler::DipoleSpec axial_pi{coupler::DipoleKind::linear_pi, 0.0};
          const coupler::DipoleSpec axial_sigma{coupler::DipoleKind::circular_sigma,
                                                0.0};
          const coupler::DipoleSpec perp{coupler::DipoleKind::linear_pi,
                                         coupler::pi / 2.0};
          const double na = sa_na > 0.0 ? sa_na : 0.95;
          const double lens1 = coupler::omega_lens(na, 1, perp);
          const double lens2 = coupler::omega_lens(na, 2, perp);
          const double hole = parse_angle(sa_hole);
          for (int i = begin; i < end; ++i) {
            const double hf = 0.01 * i;
            const coupler::MirrorGeometry geom{1.0, hf, 0.0};
            // mirrors shallower than the hole contribute nothing
            const coupler::AngularRange range{std::min(hole, geom.rim_angle()),
                                              geom.rim_angle()};
            rows[i] = {hf, coupler::weighted_solid_angle(range, axial_pi),
                       coupler::weighted_solid_angle(range, axial_sigma), lens1,
                       lens2};
          }
        };
        if (sa_parallel <= 1) {
          work(0, n);
        } else {
          std::vector<std::thread> pool;
          const int chunk = (n + sa_parallel - 1) / sa_parallel;
          for (int t = 0; t < sa_parallel; ++t)
            pool.emplace_back(work, t * chunk, std::min(n, (t + 1) * chunk));
          for (auto& th : pool) th.join();
        }
        const std::string header =
            "hf,omega_pi,omega_sigma,omega_one_lens,omega_two_lens";
        if (!sa_out.empty()) {
          coupler::csv::write_table(sa_out, header, rows);
          std::cout << sa_out << '\n';
        } else {
          std::cout << header << '\n';
          for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
              std::cout << (i ? "," : "") << coupler::csv::format_double(row[i]);
            std::cout << '\n';
          }
        }
        return;
      }
      double omega = 0.0;
      if (sa_na > 0.0) {
        omega = coupler::omega_lens(sa_na, sa_lenses, spec);
      } else if (sa_hf >= 0.0) {
        const coupler::MirrorGeometry geom{1.0, sa_hf, parse_angle(sa_hole)};
        geom.validate();
        omega = coupler::weighted_solid_angle(geom.angular_range(), spec);
      } else {
        throw CLI::ValidationError("solid-angle", "need --hf or --lens-na");
      }
      Report r;
      r.as_json = sa_json;
      r.set("omega", omega);
      r.set("fraction", omega / coupler::full_sphere_weight);
      r.print();
    });

    // ----------------------------------------------------------- overlap
    auto* ov = app.add_subcommand("overlap",
                                  "doughnut/ideal pupil overlap at a given waist");
    double ov_hf = 5.67, ov_w = 2.26;
    bool ov_json = false;
    ov->add_option("--hf", ov_hf, "depth ratio")->required();
    ov->add_option("--w", ov_w, "doughnut waist in units of f")->required();
    ov->add_flag("--json", ov_json, "JSON output");
    ov->callback([&] {
      const coupler::MirrorGeometry geom{1.0, ov_hf, 0.0};
      geom.validate();
      const double r_max = geom.rim_radius();
      const double eta = coupler::pupil_overlap(
          coupler::RadialPupilField::doughnut(ov_w, r_max),
          coupler::RadialPupilField::ideal(1.0, r_max));
      const double omega = coupler::weighted_solid_angle(
          geom.angular_range(), {coupler::DipoleKind::linear_pi, 0.0});
      Report r;
      r.as_json = ov_json;
      r.set("w_over_f", ov_w);
      r.set("eta", eta);
      r.set("clipping_loss", coupler::clipping_loss(ov_w, r_max));
      r.set("coupling_efficiency",
            coupler::coupling_efficiency(omega, std::max(eta, 0.0)));
      r.print();
    });

    // ----------------------------------------------------- optimize-waist
    auto* owst = app.add_subcommand("optimize-waist",
                                    "best doughnut waist for a mirror geometry");
    double owst_hf = 5.67;
    bool owst_json = false;
    owst->add_option("--hf", owst_hf, "depth ratio")->required();
    owst->add_flag("--json", owst_json, "JSON output");
    owst->callback([&] {
      const coupler::MirrorGeometry geom{1.0, owst_hf, 0.0};
      const coupler::WaistOptimum opt = coupler::optimize_waist(geom);
      const double omega = coupler::weighted_solid_angle(
          geom.angular_range(), {coupler::DipoleKind::linear_pi, 0.0});
      Report r;
      r.as_json = owst_json;
      r.set("w_over_f", opt.waist);
      r.set("eta", opt.eta);
      r.set("coupling_efficiency", coupler::coupling_efficiency(omega, opt.eta));
      r.set("clipping_loss", coupler::clipping_loss(opt.waist, geom.rim_radius()));
      r.print();
    });

    // -------------------------------------------------------- saturation
    auto* sat = app.add_subcommand("saturation",
                                   "saturation parameter of a focused beam");
    std::string sat_power, sat_gamma_inv, sat_delta = "0", sat_wavelength;
    double sat_g = -1.0;
    bool sat_json = false;
    sat->add_option("--power", sat_power, "incident power (e.g. 690pW)")->required();
    sat->add_option("--gamma-inv", sat_gamma_inv, "excited-state lifetime")->required();
    sat->add_option("--delta", sat_delta, "detuning (multiples of gamma)");
    sat->add_option("--wavelength", sat_wavelength, "transition wavelength")->required();
    sat->add_option("--G", sat_g, "coupling efficiency (omit to solve for G at S = 1)");
    sat->add_flag("--json", sat_json, "JSON output");
    sat->callback([&] {
      const double gamma = 1.0 / parse_time(sat_gamma_inv);
      const double power = parse_power(sat_power);
      const double omega0 = coupler::two_pi * cfg.c0 / parse_length(sat_wavelength);
      const double delta = parse_detuning(sat_delta, gamma);
      Report r;
      r.as_json = sat_json;
      if (sat_g >= 0.0) {
        const coupler::CouplingParams params{sat_g, gamma, delta, omega0};
        const double s = coupler::saturation_parameter(power, params, cfg.hbar);
        r.set("saturation", s);
        r.set("fluorescence_rate_per_s", coupler::fluorescence_rate(s, gamma));
      } else {
        const coupler::CouplingParams params{0.0, gamma, delta, omega0};
        r.set("g_at_unit_saturation",
              coupler::g_from_power_at_s1(power, params, cfg.hbar));
      }
      r.print();
    });

    // ------------------------------------------------------------- phase
    auto* ph = app.add_subcommand("phase", "phase shift of the transmitted beam");
    double ph_g = 0.0;
    std::string ph_delta = "0", ph_gamma_inv = "1s";
    bool ph_json = false;
    ph->add_option("--G", ph_g, "coupling efficiency")->required();
    ph->add_option("--delta", ph_delta, "detuning (multiples of gamma)");
    ph->add_option("--gamma-inv", ph_gamma_inv, "excited-state lifetime");
    ph->add_flag("--json", ph_json, "JSON output");
    ph->callback([&] {
      const double gamma = 1.0 / parse_time(ph_gamma_inv);
      const coupler::CouplingParams params{ph_g, gamma,
                                           parse_detuning(ph_delta, gamma), 1.0};
      const std::optional<double> phi = coupler::phase_shift(params);
      const cd t = coupler::transmission_amplitude(params);
      Report r;
      r.as_json = ph_json;
      if (phi)
        r.set("phase_rad", *phi);
      else
        r.set("phase_rad", json(nullptr));
      r.set("indeterminate", json(!phi.has_value()));
      r.set("transmission_re", t.real());
      r.set("transmission_im", t.imag());
      r.set("scattering_ratio", coupler::scattering_ratio(params));
      r.print();
    });

    // ------------------------------------------------------ transmission
    auto* tr = app.add_subcommand("transmission",
                                  "transmitted power fraction of a resonant beam");
    double tr_g = 0.0, tr_fraction = -1.0, tr_hf = -1.0;
    std::string tr_hole = "0";
    bool tr_json = false;
    tr->add_option("--G", tr_g, "coupling efficiency")->required();
    tr->add_option("--omega-fraction", tr_fraction, "omega over 8 pi / 3");
    tr->add_option("--hf", tr_hf, "depth ratio (alternative to --omega-fraction)");
    tr->add_option("--hole", tr_hole, "central hole half-angle");
    tr->add_flag("--json", tr_json, "JSON output");
    tr->callback([&] {
      double omega;
      if (tr_fraction >= 0.0) {
        omega = tr_fraction * coupler::full_sphere_weight;
      } else if (tr_hf >= 0.0) {
        const coupler::MirrorGeometry geom{1.0, tr_hf, parse_angle(tr_hole)};
        geom.validate();
        omega = coupler::weighted_solid_angle(geom.angular_range(),
                                              {coupler::DipoleKind::linear_pi, 0.0});
      } else {
        throw CLI::ValidationError("transmission", "need --omega-fraction or --hf");
      }
      const coupler::TransmittedFraction t = coupler::transmitted_fraction(tr_g, omega);
      Report r;
      r.as_json = tr_json;
      r.set("transmitted_fraction", t.value);
      r.set("clamped", json(t.clamped));
      r.print();
    });

    // ---------------------------------------------------------- temporal
    auto* tm = app.add_subcommand("temporal",
                                  "temporal overlap with the ideal rising exponential");
    std::string tm_input, tm_hist, tm_gamma_inv;
    double tm_background = 0.0;
    bool tm_scan = false, tm_json = false;
    tm->add_option("--input", tm_input, "envelope CSV (t_s,amplitude)");
    tm->add_option("--histogram", tm_hist, "histogram CSV (t_s,counts)");
    tm->add_option("--gamma-inv", tm_gamma_inv, "excited-state lifetime")->required();
    tm->add_option("--background", tm_background, "background counts per bin");
    tm->add_flag("--scan-shift", tm_scan, "search the best cut-off alignment");
    tm->add_flag("--json", tm_json, "JSON output");
    tm->callback([&] {
      const double gamma = 1.0 / parse_time(tm_gamma_inv);
      coupler::PulseEnvelope env;
      std::size_t clamped = 0;
      if (!tm_input.empty()) {
        env = coupler::read_envelope_csv(tm_input);
      } else if (!tm_hist.empty()) {
        const coupler::Histogram h = coupler::read_histogram_csv(tm_hist);
        const coupler::HistogramEnvelope he =
            coupler::envelope_from_histogram(h.counts, h.bin_width, h.t0, tm_background);
        env = he.envelope;
        clamped = he.clamped_bins;
      } else {
        throw CLI::ValidationError("temporal", "need --input or --histogram");
      }
      Report r;
      r.as_json = tm_json;
      if (tm_scan) {
        const coupler::ShiftedOverlap best = coupler::temporal_overlap_best_shift(env, gamma);
        r.set("eta_t", best.eta);
        r.set("shift_s", best.shift);
      } else {
        r.set("eta_t", coupler::temporal_overlap(env, gamma));
      }
      if (!tm_hist.empty()) r.set("clamped_bins", json(clamped));
      r.print();
    });

    // ------------------------------------------------------ pulse-scatter
    auto* ps = app.add_subcommand("pulse-scatter",
                                  "spectral scattering of a shaped pulse");
    std::string ps_input, ps_out, ps_gamma_inv, ps_detuning = "0";
    double ps_g = 0.0;
    bool ps_ideal = false, ps_json = false;
    ps->add_option("--G", ps_g, "coupling efficiency")->required();
    ps->add_option("--gamma-inv", ps_gamma_inv, "excited-state lifetime")->required();
    ps->add_option("--detuning", ps_detuning, "carrier detuning (multiples of gamma)");
    ps->add_option("--input", ps_input, "envelope CSV");
    ps->add_flag("--ideal", ps_ideal, "use the matched rising exponential");
    ps->add_option("--out", ps_out, "write the scattered envelope CSV here");
    ps->add_flag("--json", ps_json, "JSON output");
    ps->callback([&] {
      const double gamma = 1.0 / parse_time(ps_gamma_inv);
      coupler::PulseEnvelope env;
      if (!ps_input.empty()) {
        env = coupler::read_envelope_csv(ps_input);
      } else if (ps_ideal) {
        const double dt = 1.0 / (1024.0 * gamma);
        const std::size_t n = static_cast<std::size_t>(48.0 / (gamma * dt));
        env = coupler::PulseEnvelope{-24.0 / gamma + 0.5 * dt, dt,
                                     std::vector<cd>(n)};
        for (std::size_t i = 0; i < n; ++i) {
          const double t = env.time(i);
          env.samples[i] =
              t < 0.0 ? std::sqrt(gamma) * std::exp(0.5 * gamma * t) : 0.0;
        }
      } else {
        throw CLI::ValidationError("pulse-scatter", "need --input or --ideal");
      }
      const coupler::PulseEnvelope out = coupler::scatter_pulse(
          env, ps_g, gamma, parse_detuning(ps_detuning, gamma));
      const coupler::ExpDecomposition dec = coupler::decompose_exponentials(out, gamma);
      const coupler::EnergyBudget budget = coupler::energy_budget(env, out, ps_g);
      if (!ps_out.empty()) coupler::write_envelope_csv(out, ps_out);
      Report r;
      r.as_json = ps_json;
      r.set("c_rise_re", dec.c_rise.real());
      r.set("c_rise_im", dec.c_rise.imag());
      r.set("c_decay_re", dec.c_decay.real());
      r.set("c_decay_im", dec.c_decay.imag());
      r.set("residual_energy_fraction", dec.residual_energy_fraction);
      r.set("in_mode_energy_fraction", budget.in_mode_energy_fraction);
      r.set("out_of_mode_fraction", budget.out_of_mode_fraction);
      r.print();
    });

    // -------------------------------------------------------------- cavity
    auto* cv = app.add_subcommand("cavity", "time-domain resonator storage model");
    std::string cv_spec, cv_input, cv_trace, cv_decay, cv_detuning = "0";
    double cv_r1 = -1.0, cv_r2 = -1.0, cv_eta_spatial = 1.0, cv_kappa = -1.0;
    bool cv_matched = false, cv_json = false;
    cv->add_option("--spec", cv_spec, "cavity JSON {R1,R2,decay_time_s|kappa,detuning}");
    cv->add_option("--r1", cv_r1, "input mirror power reflectivity");
    cv->add_option("--r2", cv_r2, "back mirror power reflectivity");
    cv->add_option("--decay-time", cv_decay, "intensity decay time");
    cv->add_option("--kappa", cv_kappa, "energy decay rate 1/s");
    cv->add_option("--detuning", cv_detuning, "drive detuning (multiples of kappa)");
    cv->add_option("--input", cv_input, "drive envelope CSV");
    cv->add_flag("--matched", cv_matched, "drive with the matched rising exponential");
    cv->add_option("--eta-spatial", cv_eta_spatial, "spatial mode-match factor");
    cv->add_option("--trace", cv_trace, "write the full trace CSV here");
    cv->add_flag("--json", cv_json, "JSON output");
    cv->callback([&] {
      coupler::CavityParams params;
      if (!cv_spec.empty()) {
        std::ifstream file(cv_spec);
        if (!file) throw coupler::IoError("cannot open '" + cv_spec + "'");
        json j;
        try {
          file >> j;
        } catch (const nlohmann::json::exception& e) {
          throw coupler::ParseError(cv_spec + ": " + e.what());
        }
        const double r1 = j.at("R1").get<double>();
        const double r2 = j.at("R2").get<double>();
        if (j.contains("decay_time_s"))
          params = coupler::CavityParams::from_decay_time(
              r1, r2, j.at("decay_time_s").get<double>());
        else
          params = coupler::CavityParams{r1, r2, j.at("kappa").get<double>(), 0.0};
        if (j.contains("detuning")) params.detuning = j.at("detuning").get<double>();
      } else {
        if (cv_r1 <= 0.0 || cv_r2 <= 0.0)
          throw CLI::ValidationError("cavity", "need --spec or --r1/--r2");
        if (!cv_decay.empty())
          params = coupler::CavityParams::from_decay_time(cv_r1, cv_r2,
                                                          parse_time(cv_decay));
        else if (cv_kappa > 0.0)
          params = coupler::CavityParams{cv_r1, cv_r2, cv_kappa, 0.0};
        else
          throw CLI::ValidationError("cavity", "need --decay-time or --kappa");
        params.detuning = parse_cavity_detuning(cv_detuning, params.kappa);
      }
      params.validate();

      coupler::PulseEnvelope pulse;
      if (!cv_input.empty())
        pulse = coupler::read_envelope_csv(cv_input);
      else if (cv_matched)
        pulse = matched_cavity_pulse(params.kappa, params.kappa,
                                     cv_trace.empty() ? 0.0 : 6.0 / params.kappa);
      else
        throw CLI::ValidationError("cavity", "need --input or --matched");

      const coupler::CavityRates rates = coupler::cavity_rates(params);
      const double stored =
          coupler::storage_efficiency(pulse, params, cv_eta_spatial);
      const coupler::CavityResponse resp = coupler::simulate_reflection(pulse, params);
      if (!cv_trace.empty()) coupler::write_cavity_trace_csv(pulse, resp, cv_trace);
      Report r;
      r.as_json = cv_json;
      r.set("kappa", rates.kappa);
      r.set("kappa1", rates.kappa1);
      r.set("kappa2", rates.kappa2);
      r.set("coverage", rates.coverage);
      r.set("storage_efficiency", stored);
      r.set("reflected_energy_fraction",
            resp.reflected.energy() / pulse.energy());
      r.print();
    });

    // -------------------------------------------------------------- sat-fit
    auto* sf = app.add_subcommand("sat-fit",
                                  "extract G from a measured saturation curve");
    std::string sf_file, sf_gamma_inv, sf_delta = "0", sf_wavelength;
    double sf_correction = 1.0, sf_background = 0.0;
    bool sf_json = false;
    sf->add_option("data", sf_file, "CSV with header power_W,rate_per_s")->required();
    sf->add_option("--gamma-inv", sf_gamma_inv, "excited-state lifetime")->required();
    sf->add_option("--delta", sf_delta, "detuning (multiples of gamma)");
    sf->add_option("--wavelength", sf_wavelength, "transition wavelength")->required();
    sf->add_option("--correction", sf_correction,
                   "oscillator-strength correction factor");
    sf->add_option("--background", sf_background, "initial background rate guess");
    sf->add_flag("--json", sf_json, "JSON output");
    sf->callback([&] {
      const double gamma = 1.0 / parse_time(sf_gamma_inv);
      coupler::SaturationDataset data;
      data.gamma = gamma;
      data.delta = parse_detuning(sf_delta, gamma);
      data.omega0 = coupler::two_pi * cfg.c0 / parse_length(sf_wavelength);
      data.background = sf_background;
      const coupler::csv::Table table =
          coupler::csv::read_table(sf_file, "power_W,rate_per_s");
      for (const auto& row : table.rows) {
        data.power_w.push_back(row[0]);
        data.rate_per_s.push_back(row[1]);
      }
      const coupler::SaturationFitResult fit = coupler::fit_saturation(data, cfg.hbar);
      Report r;
      r.as_json = sf_json;
      r.set("g_fit", fit.g_fit);
      r.set("g_err", fit.g_err);
      r.set("g_corrected", coupler::multilevel_correction(fit.g_fit, sf_correction));
      r.set("p_at_s1_w", fit.p_at_s1);
      r.set("p_err_w", fit.p_err);
      r.set("amplitude", fit.amplitude);
      r.set("amplitude_err", fit.amplitude_err);
      r.set("background", fit.background);
      r.set("background_err", fit.background_err);
      r.set("residual_norm", fit.residual_norm);
      r.set("iterations", json(fit.iterations));
      r.print();
    });

    // --------------------------------------------------------------- stokes
    auto* st = app.add_subcommand("stokes",
                                  "score a measured Stokes map against the ideal mode");
    std::string st_file;
    double st_hf = 5.67, st_radius = -1.0;
    bool st_json = false;
    st->add_option("map", st_file, "CSV with header x,y,S0,S1,S2,S3")->required();
    st->add_option("--hf", st_hf, "mirror depth ratio")->required();
    st->add_option("--pupil-radius", st_radius,
                   "pupil radius in map units (default: inscribed circle)");
    st->add_flag("--json", st_json, "JSON output");
    st->callback([&] {
      coupler::StokesMap map = coupler::parse_stokes_map(st_file);
      if (st_radius > 0.0) map.pupil_radius = st_radius;
      const coupler::MirrorGeometry geom{1.0, st_hf, 0.0};
      const coupler::EtaReport report =
          coupler::measured_eta(coupler::reconstruct_field(map), geom);
      Report r;
      r.as_json = st_json;
      r.set("eta", report.eta);
      r.set("unpolarized_fraction", report.unpolarized_fraction);
      r.set("flagged_pixels", json(report.flagged_pixels));
      r.set("pupil_coverage", report.pupil_coverage);
      r.print();
    });

    // ------------------------------------------------------------------ fig
    auto* fg = app.add_subcommand("fig", "regenerate a figure's data files");
    std::string fg_id, fg_dir;
    fg->add_option("id", fg_id, "figure id: 1, 2b, 6, 7 or 9")
        ->required()
        ->check(CLI::IsMember({"1", "2b", "6", "7", "9"}));
    fg->add_option("--out-dir", fg_dir, "output directory (default: config)");
    fg->callback([&] {
      const std::string dir = fg_dir.empty() ? cfg.output_dir : fg_dir;
      std::filesystem::create_directories(dir);
      if (fg_id == "1")
        emit_fig1(dir);
      else if (fg_id == "2b")
        emit_fig2b(dir);
      else if (fg_id == "6")
        emit_fig6(dir);
      else if (fg_id == "7")
        emit_fig7(dir);
      else
        emit_fig9(dir, cfg);
    });

    // --------------------------------------------------------------- verify
    auto* vf = app.add_subcommand("verify", "run the acceptance criteria");
    std::uint64_t vf_seed = 42;
    vf->add_option("--seed", vf_seed, "seed for the randomized suites");
    vf->callback([&] {
      const std::vector<coupler::CriterionResult> results =
          coupler::run_acceptance_criteria(vf_seed);
      bool all_ok = true;
      for (const coupler::CriterionResult& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name
                  << " -- " << r.detail << '\n';
        all_ok = all_ok && r.passed;
      }
      if (!all_ok) exit_code = 1;
    });

    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const coupler::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 3;
  } catch (const coupler::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 3;
  } catch (const coupler::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const coupler::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
