#include "sawkit/tls.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "sawkit/constants.hpp"
#include "sawkit/error.hpp"
#include "sawkit/lm.hpp"

namespace sawkit::tls {

using constants::hbar;
using constants::k_B;
using constants::pi;

namespace {

// B_2k / (2k) for k = 1..9.
constexpr std::array<double, 9> kAsymptotic = {
    1.0 / 12.0,           -1.0 / 120.0,          1.0 / 252.0,
    -1.0 / 240.0,         1.0 / 132.0,           -691.0 / 32760.0,
    1.0 / 12.0,           -3617.0 / 8160.0,      43867.0 / 14364.0,
};

std::complex<double> digamma_asymptotic(std::complex<double> z) {
  const std::complex<double> inv = 1.0 / z;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> term = inv2;
  std::complex<double> sum = 0.0;
  for (double c : kAsymptotic) {
    sum += c * term;
    term *= inv2;
  }
  return std::log(z) - 0.5 * inv - sum;
}

}  // namespace

double re_digamma_half_plus_imag(double y) {
  y = std::abs(y);
  std::complex<double> z{0.5, y};
  if (y >= 8.0) return digamma_asymptotic(z).real();
  constexpr int shift = 8;
  double correction = 0.0;
  for (int k = 0; k < shift; ++k) {
    const double re = 0.5 + k;
    correction += re / (re * re + y * y);  // Re 1/(z + k)
  }
  return digamma_asymptotic(z + static_cast<double>(shift)).real() - correction;
}

double reduced_frequency(double f0_hz, double temperature_K) {
  return hbar * f0_hz / (k_B * temperature_K);
}

double shift_bracket(double y) {
  if (!(y > 0.0)) throw DomainError("shift_bracket: y must be > 0");
  return re_digamma_half_plus_imag(y) - std::log(y);
}

double tls_frequency_shift(double f_delta_tls, double f0_hz, double temperature_K,
                           double reference_temperature_K) {
  if (!(temperature_K > 0.0) || !(reference_temperature_K > 0.0))
    throw DomainError("tls_frequency_shift: temperatures must be > 0");
  if (!(f0_hz > 0.0)) throw DomainError("tls_frequency_shift: f0 must be > 0");
  if (temperature_K == reference_temperature_K) return 0.0;
  const double g = shift_bracket(reduced_frequency(f0_hz, temperature_K));
  const double g_ref = shift_bracket(reduced_frequency(f0_hz, reference_temperature_K));
  return f_delta_tls / pi * (g - g_ref);
}

double q_tls(double f_delta_tls, double f0_hz, double temperature_K) {
  if (!(f_delta_tls > 0.0) || !(f0_hz > 0.0) || !(temperature_K > 0.0))
    throw DomainError("q_tls: arguments must be positive");
  const double x = hbar * constants::two_pi * f0_hz / (2.0 * k_B * temperature_K);
  return 1.0 / (f_delta_tls * std::tanh(x));
}

TlsFitResult fit_fdelta(const TemperatureSweepSeries& series) {
  auto pts = series.points();
  const double t_ref_req = series.reference_temperature_K();

  double best = std::numeric_limits<double>::infinity();
  double t_ref = 0.0;
  for (const auto& p : pts) {
    const double d = std::abs(p.temperature_K - t_ref_req);
    if (d < best) {
      best = d;
      t_ref = p.temperature_K;
    }
  }
  double f_ref = 0.0;
  int n_ref = 0;
  for (const auto& p : pts)
    if (p.temperature_K == t_ref) {
      f_ref += p.f0_hz;
      ++n_ref;
    }
  f_ref /= n_ref;

  const bool weighted =
      std::all_of(pts.begin(), pts.end(), [](const auto& p) { return p.f0_err_hz > 0.0; });
  const double g_ref = shift_bracket(reduced_frequency(f_ref, t_ref));

  std::vector<double> shape(pts.size()), shift(pts.size()), weight(pts.size());
  double sws = 0.0, swd = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    shape[i] = p.temperature_K == t_ref
                   ? 0.0
                   : f_ref / pi * (shift_bracket(reduced_frequency(f_ref, p.temperature_K)) - g_ref);
    shift[i] = p.f0_hz - f_ref;
    weight[i] = weighted ? 1.0 / (p.f0_err_hz * p.f0_err_hz) : 1.0;
    sws += weight[i] * shape[i] * shape[i];
    swd += weight[i] * shape[i] * shift[i];
  }
  if (!(sws > 0.0)) throw FitError("fit_fdelta: degenerate temperature shape");

  TlsFitResult r;
  r.f_delta_tls = swd / sws;
  r.f0_hz = f_ref;
  r.reference_temperature_K = t_ref;

  double ss = 0.0;
  std::size_t n_free = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double res = shift[i] - r.f_delta_tls * shape[i];
    ss += res * res;
    if (pts[i].temperature_K != t_ref) ++n_free;
  }
  r.residual_rms = std::sqrt(ss / static_cast<double>(pts.size()));
  if (weighted) {
    r.f_delta_err = std::sqrt(1.0 / sws);
  } else {
    const double dof = n_free > 1 ? static_cast<double>(n_free - 1) : 1.0;
    r.f_delta_err = std::sqrt(ss / dof / sws);
  }
  r.nonpositive_warning = !(r.f_delta_tls > 0.0);
  return r;
}

void PowerModelParams::validate() const {
  if (!(f_delta_tls >= 0.0) || !(n_c > 0.0) || !(q_i_res > 0.0) || !(temperature_K > 0.0) ||
      !(f0_hz > 0.0))
    throw DomainError("power model: parameters must be positive");
  if (!(beta > 0.0) || beta > 2.0) throw DomainError("power model: beta must lie in (0, 2]");
}

namespace {

double tls_thermal_factor(double f0_hz, double temperature_K) {
  return std::tanh(hbar * constants::two_pi * f0_hz / (2.0 * k_B * temperature_K));
}

}  // namespace

double qi_power_model(const PowerModelParams& params, double mean_phonon_number) {
  const double th = tls_thermal_factor(params.f0_hz, params.temperature_K);
  const double sat = std::sqrt(1.0 + std::pow(mean_phonon_number / params.n_c, params.beta));
  return 1.0 / (params.f_delta_tls * th / sat + 1.0 / params.q_i_res);
}

PowerFitResult fit_power_sweep(const PowerSweepSeries& series, std::optional<double> fixed_beta) {
  auto pts = series.points();
  const std::size_t m = pts.size();
  const double th = tls_thermal_factor(series.f0_hz(), series.temperature_K());

  bool beta_fixed = fixed_beta.has_value();
  double beta0 = fixed_beta.value_or(default_fixed_beta);
  if (!beta_fixed && series.decades() < min_decades_for_free_beta) beta_fixed = true;
  if (beta_fixed && (!(beta0 > 0.0) || beta0 > 2.0))
    throw DomainError("fit_power_sweep: fixed beta must lie in (0, 2]");

  std::vector<double> n(m), u(m), sigma(m);
  for (std::size_t i = 0; i < m; ++i) {
    n[i] = pts[i].mean_phonon_number;
    u[i] = 1.0 / pts[i].qi;
  }
  std::vector<double> us = u;
  std::nth_element(us.begin(), us.begin() + static_cast<std::ptrdiff_t>(m / 2), us.end());
  const double scale = us[m / 2];
  const bool weighted =
      std::all_of(pts.begin(), pts.end(), [](const auto& p) { return p.qi_err > 0.0; });
  for (std::size_t i = 0; i < m; ++i)
    sigma[i] = weighted ? pts[i].qi_err / (pts[i].qi * pts[i].qi) : scale;

  const auto [nmin_it, nmax_it] = std::minmax_element(n.begin(), n.end());
  const double ln_lo = std::log(*nmin_it) - 10.0 * std::log(10.0);
  const double ln_hi = std::log(*nmax_it) + 10.0 * std::log(10.0);

  // x = [a, ln n_c, (beta), b] with u = scale * (a / sqrt(1 + (n/n_c)^beta) + b).
  const int ib = beta_fixed ? -1 : 2;
  const int iq = beta_fixed ? 2 : 3;
  auto beta_of = [&](const Eigen::VectorXd& x) { return beta_fixed ? beta0 : x[ib]; };
  auto residual = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r) {
    if (!(x[iq] > 0.0) || !(x[0] >= 0.0) || !x.allFinite()) return false;
    const double nc = std::exp(x[1]);
    const double beta = beta_of(x);
    r.resize(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
      const double model = scale * (x[0] / std::sqrt(1.0 + std::pow(n[i] / nc, beta)) + x[iq]);
      r[static_cast<Eigen::Index>(i)] = (model - u[i]) / sigma[i];
    }
    return true;
  };
  auto project = [&](Eigen::VectorXd& x) {
    x[0] = std::max(x[0], 0.0);
    x[1] = std::clamp(x[1], ln_lo, ln_hi);
    if (!beta_fixed) x[ib] = std::clamp(x[ib], 0.05, 2.0);
    x[iq] = std::max(x[iq], 1e-12);
  };

  // Endpoint levels seed a and b; n_c is scanned one start per decade.
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return n[a] < n[b]; });
  const double u_low = 0.5 * (u[order[0]] + u[order[1]]);
  const double u_high = 0.5 * (u[order[m - 1]] + u[order[m - 2]]);
  const double b0 = std::max(std::min(u_high, u_low), 1e-6 * scale) / scale;
  const double a0 = std::max(u_low - u_high, 1e-3 * scale) / scale;

  std::optional<lm::Result> best;
  for (double lg = std::floor(std::log10(*nmin_it)); lg <= std::ceil(std::log10(*nmax_it));
       lg += 1.0) {
    Eigen::VectorXd x0(beta_fixed ? 3 : 4);
    x0[0] = a0;
    x0[1] = lg * std::log(10.0);
    if (!beta_fixed) x0[ib] = beta0;
    x0[iq] = b0;
    lm::Options lo;
    lo.backend = lm::JacobianBackend::serial;
    auto res = lm::minimize(residual, x0, lo, project);
    if (!res.converged) continue;
    if (!best || res.cost < best->cost) best = std::move(res);
  }
  if (!best) throw FitError("fit_power_sweep: no start converged within 200 iterations");

  const auto& x = best->x;
  const auto& c = best->covariance;
  auto sd = [&](int i) { return std::sqrt(std::max(c(i, i), 0.0)); };

  PowerFitResult r;
  r.params.f_delta_tls = x[0] * scale / th;
  r.params.n_c = std::exp(x[1]);
  r.params.beta = beta_of(x);
  r.params.q_i_res = 1.0 / (x[iq] * scale);
  r.params.temperature_K = series.temperature_K();
  r.params.f0_hz = series.f0_hz();
  r.errors.f_delta_tls = sd(0) * scale / th;
  r.errors.n_c = r.params.n_c * sd(1);
  r.errors.beta = beta_fixed ? 0.0 : sd(ib);
  r.errors.q_i_res = r.params.q_i_res * sd(iq) / x[iq];
  r.beta_fixed = beta_fixed;
  r.beta_unidentified = !beta_fixed && r.errors.beta > r.params.beta;
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double d = 1.0 / qi_power_model(r.params, n[i]) - u[i];
    ss += d * d;
  }
  r.residual_rms = std::sqrt(ss / static_cast<double>(m));
  r.n_iterations = best->iterations;
  return r;
}

}  // namespace sawkit::tls
