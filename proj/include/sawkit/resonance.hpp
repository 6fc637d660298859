#pragma once

#include <optional>
#include <utility>

#include "sawkit/constants.hpp"
#include "sawkit/types.hpp"

namespace sawkit::resonance {

// Rate convention: kappa_hz, kappa_e_hz, gamma_hz and g_hz are angular rates
// in rad/s (so a 150 kHz linewidth is kappa_hz = 2*pi*150e3). Frequencies
// (f0_hz, f_dark_hz) are ordinary frequencies in Hz. Detunings inside the
// model are angular: Delta = 2*pi*(f - f0).

struct DarkMode {
  double f_dark_hz = 0.0;
  double gamma_hz = 0.0;
  double g_hz = 0.0;
};

/// a * exp(i * tau * omega), omega = 2*pi*f.
struct Background {
  Complex a{1.0, 0.0};
  double tau_s = 0.0;
};

struct ResonanceModelParams {
  double f0_hz = 0.0;
  double kappa_hz = 0.0;
  double kappa_e_hz = 0.0;
  std::optional<DarkMode> dark;
  Background background;

  /// Throws DomainError unless kappa > 0, 0 < kappa_e < kappa, gamma > 0 and g >= 0.
  void validate() const;
};

struct DarkModeErrors {
  double f_dark_hz = 0.0;
  double gamma_hz = 0.0;
  double g_hz = 0.0;
};

struct ParamErrors {
  double f0_hz = 0.0;
  double kappa_hz = 0.0;
  double kappa_e_hz = 0.0;
  std::optional<DarkModeErrors> dark;
  double a_re = 0.0;
  double a_im = 0.0;
  double tau_s = 0.0;
};

struct ResonanceFitResult {
  ResonanceModelParams params;
  ParamErrors param_errors;
  double qi = 0.0;
  double qe = 0.0;
  double residual_rms = 0.0;
  int n_iterations = 0;
};

enum class ModelKind { lorentzian, dark_mode };

/// Cavity response without background: 1 - ke / (i D + k/2 + g^2 / (i Db + gamma/2)).
inline Complex cavity_response(const ResonanceModelParams& p, double f_hz) noexcept {
  const double detuning = constants::two_pi * (f_hz - p.f0_hz);
  Complex denom{p.kappa_hz / 2.0, detuning};
  if (p.dark) {
    const double detuning_b = constants::two_pi * (f_hz - p.dark->f_dark_hz);
    denom += (p.dark->g_hz * p.dark->g_hz) / Complex{p.dark->gamma_hz / 2.0, detuning_b};
  }
  return 1.0 - p.kappa_e_hz / denom;
}

/// Full reflection model including the background scale and cable delay.
inline Complex eval_s11(const ResonanceModelParams& p, double f_hz) noexcept {
  const double w = constants::two_pi * f_hz;
  return p.background.a * std::polar(1.0, p.background.tau_s * w) * cavity_response(p, f_hz);
}

/// (qi, qe) = (2*pi*f0 / (kappa - kappa_e), 2*pi*f0 / kappa_e). Throws if kappa <= kappa_e.
std::pair<double, double> q_factors(const ResonanceModelParams& params);

/// Initial guess from the dominant |S11| dip. Never includes a dark mode.
ResonanceModelParams estimate_initial_params(const ComplexSpectrum& spectrum);

struct FitOptions {
  int max_iterations = 200;
  double rel_cost_tol = 1e-10;
  double step_tol = 1e-12;
};

/// Damped least squares on Re and Im of S11 jointly. Throws FitError on
/// non-convergence or when kappa_e runs into kappa.
ResonanceFitResult fit_resonance(const ComplexSpectrum& spectrum, ModelKind kind,
                                 std::optional<ResonanceModelParams> init = std::nullopt,
                                 const FitOptions& options = {});

}  // namespace sawkit::resonance
