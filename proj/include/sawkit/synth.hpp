#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sawkit/tls.hpp"
#include "sawkit/types.hpp"
#include "sawkit/xps.hpp"

// Synthetic data generators. Each is a pure function of its arguments; noise
// comes from std::mt19937_64 seeded with `seed`.
namespace sawkit::synth {

std::vector<double> linear_grid(double lo, double hi, std::size_t n);
std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// Per-quadrature noise standard deviation for a given SNR against a unit
/// background: total complex noise RMS = 10^(-snr_db / 20).
double quadrature_sigma_for_snr_db(double snr_db);

struct DarkModeSpec {
  double g_hz;        ///< coupling rate, rad/s
  double delta_b_hz;  ///< f_dark - f0, Hz
  double gamma_hz;    ///< dark-mode loss rate, rad/s
};

/// Resonance parameters for synthesis. Rates are angular (rad/s).
struct S11Spec {
  double f0_hz;
  double kappa_hz;
  double kappa_e_hz;
  std::optional<DarkModeSpec> dark;
  Complex a{1.0, 0.0};
  double tau_s = 0.0;
};

/// Rates from quality factors: kappa_e = w0 / qe, kappa = w0 / qi + kappa_e.
S11Spec s11_spec_from_q(double f0_hz, double qi, double qe);

/// S11 on the grid plus complex Gaussian noise of `noise_sigma` per quadrature.
ComplexSpectrum synth_s11(const S11Spec& spec, std::span<const double> freq_hz, double noise_sigma,
                          std::uint64_t seed);

/// f0(T) = f0 * (1 + shift(T)) relative to the reference temperature, plus
/// Gaussian noise; each point carries f0_err = noise_sigma_hz.
TemperatureSweepSeries synth_temperature_sweep(double f_delta_tls, double f0_hz,
                                               std::span<const double> temperatures_K,
                                               double noise_sigma_hz, std::uint64_t seed,
                                               double reference_temperature_K = 0.2);

/// Q_i(n) from the power model with multiplicative Gaussian noise of relative
/// size `rel_noise`; qi_err = rel_noise * qi.
PowerSweepSeries synth_power_sweep(const tls::PowerModelParams& params,
                                   std::span<const double> mean_phonon_numbers, double rel_noise,
                                   std::uint64_t seed);

struct XpsSpec {
  ElementLine line;
  std::vector<xps::Band> bands;
  double base_counts = 0.0;
  /// Height of a Shirley-shaped step that rises toward high binding energy in
  /// proportion to the cumulative band area.
  double step_counts = 0.0;
  double noise_sigma = 0.0;
  bool descending_axis = true;
};

/// Counts on the given (ascending) energy grid; clipped at zero after noise.
XpsSpectrum synth_xps(const XpsSpec& spec, std::span<const double> energy_ev, std::uint64_t seed);

/// Nb3d5/2 at `center_ev` with its 3/2 partner 2.72 eV higher at 2/3 the area.
std::vector<xps::Band> nb3d_doublet_bands(double center_ev, double area_52);

struct TerraceSpec {
  std::size_t nx = 512;
  std::size_t ny = 512;
  double dx_m = 20e-9;
  double dy_m = 20e-9;
  double step_m = 200e-12;
  double noise_m = 80e-12;
  double offset_m = 0.0;
  /// Global plane added on top, meters per pixel.
  double tilt_x_m = 0.0;
  double tilt_y_m = 0.0;
};

/// Three terrace levels (0, step, 2 step). Each row holds the levels in a
/// mirror-symmetric layout with equal shares, so per-row linear detrending
/// keeps the terrace heights; the level order changes between row blocks.
AfmImage synth_afm_terraces(const TerraceSpec& spec, std::uint64_t seed);

/// A single terrace: Gaussian heights of standard deviation sigma_m.
AfmImage synth_afm_noise(std::size_t nx, std::size_t ny, double sigma_m, double pitch_m,
                         std::uint64_t seed);

/// eta = amplitude * sin(2 (theta - theta0)) in degrees, plus Gaussian noise.
WalkoffCurve synth_walkoff(std::span<const double> theta_deg, double amplitude_deg,
                           double theta0_deg, double noise_deg, std::uint64_t seed);

}  // namespace sawkit::synth
