#include "sawkit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sawkit/constants.hpp"
#include "sawkit/error.hpp"

namespace sawkit::synth {

using constants::pi;
using constants::two_pi;

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  if (n < 2) throw DomainError("linear_grid: need at least 2 points");
  std::vector<double> g(n);
  const double d = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + d * static_cast<double>(i);
  g.back() = hi;
  return g;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("log_grid: need 0 < lo < hi");
  auto g = linear_grid(std::log10(lo), std::log10(hi), n);
  for (double& v : g) v = std::pow(10.0, v);
  return g;
}

double quadrature_sigma_for_snr_db(double snr_db) {
  return std::pow(10.0, -snr_db / 20.0) / std::sqrt(2.0);
}

S11Spec s11_spec_from_q(double f0_hz, double qi, double qe) {
  if (!(qi > 0.0) || !(qe > 0.0)) throw DomainError("quality factors must be positive");
  const double w0 = two_pi * f0_hz;
  S11Spec s{};
  s.f0_hz = f0_hz;
  s.kappa_e_hz = w0 / qe;
  s.kappa_hz = w0 / qi + s.kappa_e_hz;
  return s;
}

ComplexSpectrum synth_s11(const S11Spec& spec, std::span<const double> freq_hz, double noise_sigma,
                          std::uint64_t seed) {
  if (!(spec.kappa_hz > 0.0) || !(spec.kappa_e_hz > 0.0) || spec.kappa_e_hz >= spec.kappa_hz)
    throw DomainError("synth_s11: need 0 < kappa_e < kappa");
  if (spec.dark && (!(spec.dark->gamma_hz > 0.0) || spec.dark->g_hz < 0.0))
    throw DomainError("synth_s11: dark mode needs gamma > 0 and g >= 0");
  if (!(noise_sigma >= 0.0)) throw DomainError("synth_s11: noise_sigma must be >= 0");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> values(freq_hz.size());
  for (std::size_t i = 0; i < freq_hz.size(); ++i) {
    const double f = freq_hz[i];
    // Denominator D = kappa/2 + i Delta + g^2 / (gamma/2 + i Delta_b), in real arithmetic.
    double dr = 0.5 * spec.kappa_hz;
    double di = two_pi * (f - spec.f0_hz);
    if (spec.dark) {
      const double hg = 0.5 * spec.dark->gamma_hz;
      const double db = two_pi * (f - spec.f0_hz - spec.dark->delta_b_hz);
      const double g2 = spec.dark->g_hz * spec.dark->g_hz;
      const double m = hg * hg + db * db;
      dr += g2 * hg / m;
      di -= g2 * db / m;
    }
    const double dm = dr * dr + di * di;
    const double sr = 1.0 - spec.kappa_e_hz * dr / dm;
    const double si = spec.kappa_e_hz * di / dm;
    const double ph = spec.tau_s * two_pi * f;
    const double cr = std::cos(ph), ci = std::sin(ph);
    const double br = spec.a.real() * cr - spec.a.imag() * ci;
    const double bi = spec.a.real() * ci + spec.a.imag() * cr;
    double re = br * sr - bi * si;
    double im = br * si + bi * sr;
    if (noise_sigma > 0.0) {
      re += noise_sigma * normal(rng);
      im += noise_sigma * normal(rng);
    }
    values[i] = {re, im};
  }
  return ComplexSpectrum({freq_hz.begin(), freq_hz.end()}, std::move(values));
}

TemperatureSweepSeries synth_temperature_sweep(double f_delta_tls, double f0_hz,
                                               std::span<const double> temperatures_K,
                                               double noise_sigma_hz, std::uint64_t seed,
                                               double reference_temperature_K) {
  if (temperatures_K.empty()) throw DomainError("synth_temperature_sweep: empty temperature list");
  if (!(f_delta_tls >= 0.0)) throw DomainError("synth_temperature_sweep: f_delta must be >= 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<TemperaturePoint> pts;
  pts.reserve(temperatures_K.size());
  for (double t : temperatures_K) {
    if (!(t > 0.0) || t > 1.0)
      throw DomainError("synth_temperature_sweep: temperatures must lie in (0, 1] K");
    const double shift = tls::tls_frequency_shift(f_delta_tls, f0_hz, t, reference_temperature_K);
    double f = f0_hz + f0_hz * shift;
    if (noise_sigma_hz > 0.0) f += noise_sigma_hz * normal(rng);
    pts.push_back({t, f, noise_sigma_hz});
  }
  return TemperatureSweepSeries(std::move(pts), reference_temperature_K);
}

PowerSweepSeries synth_power_sweep(const tls::PowerModelParams& params,
                                   std::span<const double> mean_phonon_numbers, double rel_noise,
                                   std::uint64_t seed) {
  params.validate();
  if (!(rel_noise >= 0.0)) throw DomainError("synth_power_sweep: rel_noise must be >= 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<PowerPoint> pts;
  for (double n : mean_phonon_numbers) {
    const double q = tls::qi_power_model(params, n);
    const double noisy = rel_noise > 0.0 ? q * (1.0 + rel_noise * normal(rng)) : q;
    pts.push_back({n, noisy, rel_noise * q});
  }
  return PowerSweepSeries(std::move(pts), params.temperature_K, params.f0_hz);
}

namespace {

// Fraction of a band's area below energy e.
double band_cdf(const xps::Band& b, double e) {
  const double d = e - b.center_ev;
  const double lor = 0.5 + std::atan(d / b.gamma_ev) / pi;
  const double gau = 0.5 * std::erfc(-d / (b.sigma_ev * std::sqrt(2.0)));
  return b.mix * lor + (1.0 - b.mix) * gau;
}

}  // namespace

XpsSpectrum synth_xps(const XpsSpec& spec, std::span<const double> energy_ev, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double total = 0.0;
  for (const auto& b : spec.bands) total += b.amplitude;
  std::vector<double> be(energy_ev.begin(), energy_ev.end());
  std::vector<double> counts(be.size());
  for (std::size_t i = 0; i < be.size(); ++i) {
    double c = spec.base_counts;
    double below = 0.0;
    for (const auto& b : spec.bands) {
      c += xps::pseudo_voigt(b, be[i]);
      below += b.amplitude * band_cdf(b, be[i]);
    }
    if (total > 0.0) c += spec.step_counts * below / total;
    if (spec.noise_sigma > 0.0) c += spec.noise_sigma * normal(rng);
    counts[i] = std::max(c, 0.0);
  }
  if (spec.descending_axis) {
    std::reverse(be.begin(), be.end());
    std::reverse(counts.begin(), counts.end());
  }
  return XpsSpectrum(std::move(be), std::move(counts), spec.line);
}

std::vector<xps::Band> nb3d_doublet_bands(double center_ev, double area_52) {
  xps::Band b52;
  b52.name = "nb3d52";
  b52.center_ev = center_ev;
  b52.sigma_ev = 0.6;
  b52.gamma_ev = 0.3;
  b52.amplitude = area_52;
  xps::Band b32 = b52;
  b32.name = "nb3d32";
  b32.center_ev = center_ev + 2.72;
  b32.amplitude = area_52 * 2.0 / 3.0;
  return {b52, b32};
}

AfmImage synth_afm_terraces(const TerraceSpec& spec, std::uint64_t seed) {
  if (spec.nx < 12) throw DomainError("synth_afm_terraces: nx too small for the terrace layout");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  // Six segments mirrored about the row center: [L0 L1 L2 | L2 L1 L0].
  const std::size_t half = spec.nx / 2;
  const std::size_t w = half / 3;
  const std::size_t block = std::max<std::size_t>(1, spec.ny / 8);
  std::vector<double> h(spec.nx * spec.ny);
  for (std::size_t iy = 0; iy < spec.ny; ++iy) {
    const std::size_t rot = (iy / block) % 3;
    for (std::size_t ix = 0; ix < spec.nx; ++ix) {
      const std::size_t m = ix < half ? ix : spec.nx - 1 - ix;
      const std::size_t seg = std::min<std::size_t>(m / std::max<std::size_t>(w, 1), 2);
      const std::size_t level = (seg + rot) % 3;
      double z = spec.offset_m + spec.step_m * static_cast<double>(level);
      z += spec.tilt_x_m * static_cast<double>(ix) + spec.tilt_y_m * static_cast<double>(iy);
      if (spec.noise_m > 0.0) z += spec.noise_m * normal(rng);
      h[iy * spec.nx + ix] = z;
    }
  }
  return AfmImage(spec.nx, spec.ny, std::move(h), spec.dx_m, spec.dy_m);
}

AfmImage synth_afm_noise(std::size_t nx, std::size_t ny, double sigma_m, double pitch_m,
                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> h(nx * ny);
  for (double& v : h) v = sigma_m * normal(rng);
  return AfmImage(nx, ny, std::move(h), pitch_m, pitch_m);
}

WalkoffCurve synth_walkoff(std::span<const double> theta_deg, double amplitude_deg,
                           double theta0_deg, double noise_deg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> eta(theta_deg.size());
  for (std::size_t i = 0; i < theta_deg.size(); ++i) {
    eta[i] = amplitude_deg * std::sin(2.0 * (theta_deg[i] - theta0_deg) * pi / 180.0);
    if (noise_deg > 0.0) eta[i] += noise_deg * normal(rng);
  }
  return WalkoffCurve({theta_deg.begin(), theta_deg.end()}, std::move(eta));
}

}  // namespace sawkit::synth
