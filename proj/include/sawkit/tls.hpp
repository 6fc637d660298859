#pragma once

#include <optional>

#include "sawkit/types.hpp"

namespace sawkit::tls {

/// Re psi(1/2 + i y). Asymptotic series for |y| >= 8, upward recurrence into
/// the asymptotic region otherwise. Absolute accuracy better than 1e-12.
double re_digamma_half_plus_imag(double y);

/// y = hbar * omega / (2 pi k_B T) with omega = 2 pi f0, i.e. hbar f0 / (k_B T).
double reduced_frequency(double f0_hz, double temperature_K);

/// Re psi(1/2 + i y) - ln y, the temperature-dependent bracket of the
/// standard-tunneling-model frequency shift. Requires y > 0.
double shift_bracket(double y);

/// Fractional frequency shift relative to the reference temperature:
///   (F delta / pi) * [bracket(y(T)) - bracket(y(T_ref))].
/// Zero at T = T_ref. Throws DomainError for non-positive temperatures.
double tls_frequency_shift(double f_delta_tls, double f0_hz, double temperature_K,
                           double reference_temperature_K);

/// 1 / (F delta * tanh(hbar omega / (2 k_B T))).
double q_tls(double f_delta_tls, double f0_hz, double temperature_K);

struct TlsFitResult {
  double f_delta_tls = 0.0;
  double f_delta_err = 0.0;
  double f0_hz = 0.0;  ///< resonance frequency at the reference temperature
  double reference_temperature_K = 0.0;
  double residual_rms = 0.0;  ///< Hz
  bool nonpositive_warning = false;
};

/// Closed-form weighted least squares for F delta. The reference point is the
/// sample closest to the series reference temperature; its frequency anchors
/// the shifts and sets omega_r inside the bracket. Weights are 1/f0_err^2 when
/// every point carries a positive error, uniform otherwise.
TlsFitResult fit_fdelta(const TemperatureSweepSeries& series);

struct PowerModelParams {
  double f_delta_tls = 0.0;
  double n_c = 1.0;
  double beta = 0.5;
  double q_i_res = 1.0;
  double temperature_K = 0.01;
  double f0_hz = 1.0;

  void validate() const;
};

/// Q_tot(n) from 1/Q_tot = F delta tanh(hbar w / 2 k_B T) / sqrt(1 + (n/n_c)^beta) + 1/Q_res.
double qi_power_model(const PowerModelParams& params, double mean_phonon_number);

struct PowerParamErrors {
  double f_delta_tls = 0.0;
  double n_c = 0.0;
  double beta = 0.0;
  double q_i_res = 0.0;
};

struct PowerFitResult {
  PowerModelParams params;
  PowerParamErrors errors;
  bool beta_fixed = false;
  bool beta_unidentified = false;
  double residual_rms = 0.0;  ///< in 1/Q
  int n_iterations = 0;
};

inline constexpr double default_fixed_beta = 0.5;
inline constexpr double min_decades_for_free_beta = 4.0;

/// Damped least squares on 1/Q_i over (F delta, n_c, beta, Q_res). beta is held
/// at `fixed_beta` when given, and at 0.5 when the sweep spans fewer than four
/// decades. Throws FitError on non-convergence.
PowerFitResult fit_power_sweep(const PowerSweepSeries& series,
                               std::optional<double> fixed_beta = std::nullopt);

}  // namespace sawkit::tls
