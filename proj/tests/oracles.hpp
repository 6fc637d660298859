#pragma once

// Independent reference computations, written from the defining formulas
// and kept away from the library code paths.

#include <cmath>
#include <complex>

namespace oracle {

/// Re psi(1/2 + i y) from the series
///   -gamma + sum_k [1/(k+1) - (k+1/2) / ((k+1/2)^2 + y^2)]
/// summed to M terms in long double, plus an Euler-Maclaurin tail.
inline long double re_digamma_half_series(double y_in) {
  const long double y = y_in;
  const long double y2 = y * y;
  constexpr long M = 10'000'000;
  auto f = [y2](long double x) {
    const long double u = x + 0.5L;
    return 1.0L / (x + 1.0L) - u / (u * u + y2);
  };
  long double s = 0.0L;
  for (long k = M - 1; k >= 0; --k) s += f(static_cast<long double>(k));
  const long double a = static_cast<long double>(M);
  const long double ua = a + 0.5L;
  const long double integral = -std::log(a + 1.0L) + 0.5L * std::log(ua * ua + y2);
  const long double df = -1.0L / ((a + 1.0L) * (a + 1.0L)) -
                         (y2 - ua * ua) / ((ua * ua + y2) * (ua * ua + y2));
  const long double tail = integral + 0.5L * f(a) - df / 12.0L;
  constexpr long double euler_gamma = 0.577215664901532860606512090082402431L;
  return -euler_gamma + s + tail;
}

/// hbar omega / (2 k_B T) with omega = 2 pi f.
inline long double tanh_argument(long double f_hz, long double temperature_K) {
  constexpr long double hbar = 1.054571817e-34L;
  constexpr long double k_B = 1.380649e-23L;
  constexpr long double pi = 3.141592653589793238462643383279502884L;
  return pi * hbar * f_hz / (k_B * temperature_K);
}

/// Reflection of a single-port mode, optionally coupled to a dark mode,
/// evaluated with explicit real arithmetic. Rates are angular.
inline std::complex<long double> s11(long double f, long double f0, long double kappa, long double kappa_e,
                                     long double g, long double f_dark, long double gamma) {
  constexpr long double two_pi = 6.283185307179586476925286766559005768L;
  // g^2 / (gamma/2 + i Db) = g^2 (gamma/2 - i Db) / ((gamma/2)^2 + Db^2)
  const long double db = two_pi * (f - f_dark);
  const long double h = gamma / 2.0L;
  const long double m = h * h + db * db;
  const long double dre = g > 0 ? g * g * h / m : 0.0L;
  const long double dim = g > 0 ? -g * g * db / m : 0.0L;
  const long double re = kappa / 2.0L + dre;
  const long double im = two_pi * (f - f0) + dim;
  const long double n = re * re + im * im;
  return {1.0L - kappa_e * re / n, kappa_e * im / n};
}

/// Fractional frequency shift relative to t_ref from the series digamma.
inline long double frequency_shift(double f_delta, double f0, double t, double t_ref) {
  constexpr long double pi = 3.141592653589793238462643383279502884L;
  auto bracket = [&](double temp) {
    const long double y = tanh_argument(f0, temp) / pi;
    return re_digamma_half_series(static_cast<double>(y)) - std::log(y);
  };
  return f_delta / pi * (bracket(t) - bracket(t_ref));
}

}  // namespace oracle
