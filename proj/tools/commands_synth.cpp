#include <cmath>

#include "commands.hpp"
#include "sawkit/constants.hpp"
#include "sawkit/error.hpp"
#include "sawkit/io.hpp"
#include "sawkit/synth.hpp"
#include "sawkit_defaults.hpp"

namespace sawkit_cli {

namespace {

using namespace sawkit;
using constants::two_pi;

struct S11Args {
  double f0 = 688.4e6, qi = 6.8e3, qe = 1.4e4;
  std::size_t points = 8001;
  double span_linewidths = 8.0, snr_db = 40.0, tau = 0.0, phase = 0.0;
  double dark_g = 0.0, dark_detuning = 75e3, dark_gamma = 20e3;
  std::string name = "s11.csv";
};

struct TempArgs {
  double f_delta = 7.53e-5, f0 = 690e6, t_min = 0.010, t_max = 0.200, noise_hz = 0.0, t_ref = 0.2;
  std::size_t points = 20;
  std::string name = "tempsweep.csv";
};

struct PowerArgs {
  double f_delta = 5.66e-4, q_res = 2.6e3, n_c = 1e3, beta = 1.0, temperature = 0.010, f0 = 690e6;
  double n_min = 1.0, n_max = 2.8e7, rel_noise = 0.02;
  std::size_t points = 30;
  std::string name = "powersweep.csv";
};

struct XpsArgs {
  double o_pct = 67.0, nb_pct = 22.3, li_pct = 10.0, c_pct = 0.7;
  double scale = 2e4, charge_offset = 1.6, noise = 3.0;
  std::string sensitivity;
};

struct AfmArgs {
  std::string kind = "terraces";
  std::size_t nx = 512, ny = 512;
  double step = 200e-12, noise = 80e-12, pitch = 20e-9, tilt_x = 2e-12, tilt_y = 0.0;
  std::string name = "afm.txt";
};

struct WalkArgs {
  double theta_min = -90.0, theta_max = 90.0, theta0 = -30.0, amplitude = 2.0, noise = 0.0;
  std::size_t points = 181;
  std::string name = "walkoff.csv";
};

xps::Band band(const std::string& name, double center, double sigma, double gamma, double area) {
  xps::Band b;
  b.name = name;
  b.center_ev = center;
  b.sigma_ev = sigma;
  b.gamma_ev = gamma;
  b.mix = xps::default_mix;
  b.amplitude = area;
  return b;
}

}  // namespace

void add_synth_commands(CLI::App& app, GlobalOptions& g, int& rc) {
  auto* synth_cmd = app.add_subcommand("synth", "Write deterministic synthetic fixtures");
  synth_cmd->fallthrough();
  synth_cmd->require_subcommand(1);

  {
    auto a = std::make_shared<S11Args>();
    auto* c = synth_cmd->add_subcommand("s11", "Reflection trace around one mode");
    c->fallthrough();
    c->add_option("--f0", a->f0, "Resonance frequency (Hz)")->capture_default_str();
    c->add_option("--qi", a->qi, "Internal Q")->capture_default_str();
    c->add_option("--qe", a->qe, "External Q")->capture_default_str();
    c->add_option("--points", a->points, "Grid points")->capture_default_str();
    c->add_option("--span-linewidths", a->span_linewidths, "Grid span in linewidths")->capture_default_str();
    c->add_option("--snr-db", a->snr_db, "SNR against the unit background (dB)")->capture_default_str();
    c->add_option("--tau", a->tau, "Cable delay (s)")->capture_default_str();
    c->add_option("--phase", a->phase, "Background phase (rad)")->capture_default_str();
    c->add_option("--dark-g", a->dark_g, "Dark-mode coupling g / 2 pi (Hz); 0 disables")->capture_default_str();
    c->add_option("--dark-detuning", a->dark_detuning, "f_dark - f0 (Hz)")->capture_default_str();
    c->add_option("--dark-gamma", a->dark_gamma, "Dark-mode loss gamma / 2 pi (Hz)")->capture_default_str();
    c->add_option("--name", a->name, "Output file name")->capture_default_str();
    c->callback([&g, &rc, a] {
      auto spec = synth::s11_spec_from_q(a->f0, a->qi, a->qe);
      spec.a = std::polar(1.0, a->phase);
      spec.tau_s = a->tau;
      if (a->dark_g > 0.0)
        spec.dark = synth::DarkModeSpec{two_pi * a->dark_g, a->dark_detuning, two_pi * a->dark_gamma};
      const double half = 0.5 * a->span_linewidths * spec.kappa_hz / two_pi;
      const auto grid = synth::linear_grid(a->f0 - half, a->f0 + half, a->points);
      const auto s = synth::synth_s11(spec, grid, synth::quadrature_sigma_for_snr_db(a->snr_db), g.seed);
      write_output(g, a->name, io::to_s11_csv(s));
      rc = 0;
    });
  }
  {
    auto a = std::make_shared<TempArgs>();
    auto* c = synth_cmd->add_subcommand("tempsweep", "Resonance frequency versus temperature");
    c->fallthrough();
    c->add_option("--f-delta", a->f_delta, "F * delta_TLS")->capture_default_str();
    c->add_option("--f0", a->f0, "Frequency at the reference temperature (Hz)")->capture_default_str();
    c->add_option("--t-min", a->t_min, "Lowest temperature (K)")->capture_default_str();
    c->add_option("--t-max", a->t_max, "Highest temperature (K)")->capture_default_str();
    c->add_option("--points", a->points, "Number of temperatures")->capture_default_str();
    c->add_option("--noise-hz", a->noise_hz, "Frequency noise (Hz)")->capture_default_str();
    c->add_option("--reference-temperature", a->t_ref, "Reference temperature (K)")->capture_default_str();
    c->add_option("--name", a->name, "Output file name")->capture_default_str();
    c->callback([&g, &rc, a] {
      const auto temps = synth::linear_grid(a->t_min, a->t_max, a->points);
      const auto s = synth::synth_temperature_sweep(a->f_delta, a->f0, temps, a->noise_hz, g.seed, a->t_ref);
      write_output(g, a->name, io::to_tempsweep_csv(s));
      rc = 0;
    });
  }
  {
    auto a = std::make_shared<PowerArgs>();
    auto* c = synth_cmd->add_subcommand("powersweep", "Internal Q versus mean phonon number");
    c->fallthrough();
    c->add_option("--f-delta", a->f_delta, "F * delta_TLS")->capture_default_str();
    c->add_option("--q-res", a->q_res, "Residual internal Q")->capture_default_str();
    c->add_option("--n-c", a->n_c, "Critical phonon number")->capture_default_str();
    c->add_option("--beta", a->beta, "Saturation exponent")->capture_default_str();
    c->add_option("--temperature", a->temperature, "Temperature (K)")->capture_default_str();
    c->add_option("--f0", a->f0, "Mode frequency (Hz)")->capture_default_str();
    c->add_option("--n-min", a->n_min, "Lowest phonon number")->capture_default_str();
    c->add_option("--n-max", a->n_max, "Highest phonon number")->capture_default_str();
    c->add_option("--points", a->points, "Number of powers")->capture_default_str();
    c->add_option("--rel-noise", a->rel_noise, "Relative Q noise")->capture_default_str();
    c->add_option("--name", a->name, "Output file name")->capture_default_str();
    c->callback([&g, &rc, a] {
      tls::PowerModelParams p{a->f_delta, a->n_c, a->beta, a->q_res, a->temperature, a->f0};
      const auto n = synth::log_grid(a->n_min, a->n_max, a->points);
      write_output(g, a->name, io::to_powersweep_csv(synth::synth_power_sweep(p, n, a->rel_noise, g.seed)));
      rc = 0;
    });
  }
  {
    auto a = std::make_shared<XpsArgs>();
    auto* c = synth_cmd->add_subcommand("xps", "One dataset: O1s, Nb3d, Li1s and C1s spectra");
    c->fallthrough();
    c->add_option("--o-percent", a->o_pct, "Oxygen atomic percent")->capture_default_str();
    c->add_option("--nb-percent", a->nb_pct, "Niobium atomic percent")->capture_default_str();
    c->add_option("--li-percent", a->li_pct, "Lithium atomic percent")->capture_default_str();
    c->add_option("--c-percent", a->c_pct, "Carbon atomic percent")->capture_default_str();
    c->add_option("--scale", a->scale, "Counts * eV per atomic percent per unit factor")->capture_default_str();
    c->add_option("--charge-offset", a->charge_offset, "Binding-energy offset applied to every line (eV)")
        ->capture_default_str();
    c->add_option("--noise", a->noise, "Count noise standard deviation")->capture_default_str();
    c->add_option("--sensitivity", a->sensitivity, "Sensitivity table JSON used to turn percentages into areas")
        ->check(CLI::ExistingFile);
    c->callback([&g, &rc, a] {
      const auto doc = nlohmann::json::parse(a->sensitivity.empty() ? std::string(default_sensitivity_json)
                                                                    : io::read_text_file(a->sensitivity));
      const auto table = doc.contains("factors") ? doc.at("factors") : doc;
      auto area = [&](const char* line, double pct) { return pct * a->scale * table.at(line).get<double>(); };
      const double off = a->charge_offset;
      std::uint64_t seed = g.seed;
      auto emit = [&](const char* line, std::vector<xps::Band> bands, double lo, double hi, double base,
                      double step) {
        const auto grid = synth::linear_grid(lo + off, hi + off, static_cast<std::size_t>(std::lround((hi - lo) / 0.1)) + 1);
        const synth::XpsSpec spec{ElementLine::parse(line), std::move(bands), base, step, a->noise, true};
        write_output(g, std::string(line) + ".csv", io::to_xps_csv(synth::synth_xps(spec, grid, seed++)));
      };
      const double o = area("O1s", a->o_pct);
      emit("O1s",
           {band("metal_oxide", 530.0 + off, 0.55, 0.35, 0.93 * o), band("c_double_o", 531.5 + off, 0.6, 0.4, 0.05 * o),
            band("c_single_o", 533.0 + off, 0.6, 0.4, 0.02 * o)},
           523.0, 541.0, 400.0, 0.08 * o / 10.0);
      auto nb = synth::nb3d_doublet_bands(207.3 + off, area("Nb3d", a->nb_pct) * 0.6);
      emit("Nb3d", nb, 200.0, 218.0, 300.0, 0.02 * area("Nb3d", a->nb_pct) / 10.0);
      emit("Li1s", {band("li1s", 55.3 + off, 0.7, 0.3, area("Li1s", a->li_pct))}, 48.0, 62.0, 60.0, 5.0);
      emit("C1s", {band("c1s", 284.8 + off, 0.6, 0.3, area("C1s", a->c_pct))}, 278.0, 292.0, 120.0, 3.0);
      rc = 0;
    });
  }
  {
    auto a = std::make_shared<AfmArgs>();
    auto* c = synth_cmd->add_subcommand("afm", "AFM height grid");
    c->fallthrough();
    c->add_option("--kind", a->kind, "terraces or noise")->check(CLI::IsMember({"terraces", "noise"}))->capture_default_str();
    c->add_option("--nx", a->nx, "Pixels along x")->capture_default_str();
    c->add_option("--ny", a->ny, "Pixels along y")->capture_default_str();
    c->add_option("--step", a->step, "Terrace step height (m)")->capture_default_str();
    c->add_option("--noise", a->noise, "Height noise (m)")->capture_default_str();
    c->add_option("--pitch", a->pitch, "Pixel pitch (m)")->capture_default_str();
    c->add_option("--tilt-x", a->tilt_x, "Plane tilt along x (m per pixel)")->capture_default_str();
    c->add_option("--tilt-y", a->tilt_y, "Plane tilt along y (m per pixel)")->capture_default_str();
    c->add_option("--name", a->name, "Output file name")->capture_default_str();
    c->callback([&g, &rc, a] {
      AfmImage img = a->kind == "noise" ? synth::synth_afm_noise(a->nx, a->ny, a->noise, a->pitch, g.seed)
                                         : synth::synth_afm_terraces({a->nx, a->ny, a->pitch, a->pitch, a->step,
                                                                      a->noise, 0.0, a->tilt_x, a->tilt_y},
                                                                     g.seed);
      write_output(g, a->name, io::to_afm_grid(img));
      rc = 0;
    });
  }
  {
    auto a = std::make_shared<WalkArgs>();
    auto* c = synth_cmd->add_subcommand("walkoff", "Walk-off angle curve eta = A sin(2 (theta - theta0))");
    c->fallthrough();
    c->add_option("--theta-min", a->theta_min, "First drive angle (deg)")->capture_default_str();
    c->add_option("--theta-max", a->theta_max, "Last drive angle (deg)")->capture_default_str();
    c->add_option("--points", a->points, "Samples")->capture_default_str();
    c->add_option("--theta0", a->theta0, "Zero position (deg)")->capture_default_str();
    c->add_option("--amplitude", a->amplitude, "Amplitude (deg)")->capture_default_str();
    c->add_option("--noise", a->noise, "Noise (deg)")->capture_default_str();
    c->add_option("--name", a->name, "Output file name")->capture_default_str();
    c->callback([&g, &rc, a] {
      const auto theta = synth::linear_grid(a->theta_min, a->theta_max, a->points);
      write_output(g, a->name, io::to_walkoff_csv(synth::synth_walkoff(theta, a->amplitude, a->theta0, a->noise, g.seed)));
      rc = 0;
    });
  }
}

}  // namespace sawkit_cli
