#include "sawkit/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sawkit/error.hpp"
#include "sawkit/kernels.hpp"
#include "sawkit/lm.hpp"

namespace sawkit::resonance {

using constants::two_pi;

void ResonanceModelParams::validate() const {
  if (!std::isfinite(f0_hz) || !(f0_hz > 0.0)) throw DomainError("resonance: f0 must be > 0");
  if (!(kappa_hz > 0.0)) throw DomainError("resonance: kappa must be > 0");
  if (!(kappa_e_hz > 0.0) || !(kappa_e_hz < kappa_hz))
    throw DomainError("resonance: need 0 < kappa_e < kappa");
  if (dark) {
    if (!(dark->gamma_hz > 0.0)) throw DomainError("resonance: dark-mode gamma must be > 0");
    if (!(dark->g_hz >= 0.0)) throw DomainError("resonance: dark-mode g must be >= 0");
  }
  if (!std::isfinite(background.a.real()) || !std::isfinite(background.a.imag()) ||
      !std::isfinite(background.tau_s))
    throw DomainError("resonance: non-finite background");
}

std::pair<double, double> q_factors(const ResonanceModelParams& params) {
  if (!(params.kappa_e_hz > 0.0) || !(params.kappa_hz > params.kappa_e_hz))
    throw DomainError("q_factors: need 0 < kappa_e < kappa");
  const double w0 = two_pi * params.f0_hz;
  return {w0 / (params.kappa_hz - params.kappa_e_hz), w0 / params.kappa_e_hz};
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  double m = *mid;
  if (v.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(v.begin(), mid));
  }
  return m;
}

// Least-squares slope of the unwrapped phase over samples [b, e).
double phase_slope(std::span<const double> w, std::span<const Complex> s, std::size_t b,
                   std::size_t e) {
  std::vector<double> ph;
  ph.reserve(e - b);
  double prev = std::arg(s[b]);
  double offset = 0.0;
  for (std::size_t i = b; i < e; ++i) {
    double p = std::arg(s[i]);
    double d = p - prev;
    if (d > constants::pi) offset -= two_pi;
    if (d < -constants::pi) offset += two_pi;
    prev = p;
    ph.push_back(p + offset);
  }
  const double n = static_cast<double>(e - b);
  double mw = 0.0, mp = 0.0;
  for (std::size_t i = b; i < e; ++i) {
    mw += w[i];
    mp += ph[i - b];
  }
  mw /= n;
  mp /= n;
  double sww = 0.0, swp = 0.0;
  for (std::size_t i = b; i < e; ++i) {
    sww += (w[i] - mw) * (w[i] - mw);
    swp += (w[i] - mw) * (ph[i - b] - mp);
  }
  return sww > 0.0 ? swp / sww : 0.0;
}

// Maps the fit vector to model parameters. The background is parameterized
// as a_c * exp(i tau (omega - omega_c)) so a_c and tau decouple.
struct Parameterization {
  double f_ref;
  double lw_hz;
  double kappa_scale;
  double omega_c;
  double tau_scale;
  bool dark;

  int size() const { return dark ? 9 : 6; }

  ResonanceModelParams to_params(const Eigen::VectorXd& x) const {
    ResonanceModelParams p;
    p.f0_hz = f_ref + x[0] * lw_hz;
    p.kappa_hz = x[1] * kappa_scale;
    p.kappa_e_hz = x[2] * kappa_scale;
    const double tau = x[5] * tau_scale;
    p.background.tau_s = tau;
    p.background.a = Complex{x[3], x[4]} * std::polar(1.0, -tau * omega_c);
    if (dark) p.dark = DarkMode{f_ref + x[6] * lw_hz, x[7] * kappa_scale, x[8] * kappa_scale};
    return p;
  }

  Eigen::VectorXd from_params(const ResonanceModelParams& p) const {
    Eigen::VectorXd x(size());
    x[0] = (p.f0_hz - f_ref) / lw_hz;
    x[1] = p.kappa_hz / kappa_scale;
    x[2] = p.kappa_e_hz / kappa_scale;
    const Complex ac = p.background.a * std::polar(1.0, p.background.tau_s * omega_c);
    x[3] = ac.real();
    x[4] = ac.imag();
    x[5] = p.background.tau_s / tau_scale;
    if (dark) {
      const DarkMode d = p.dark.value_or(DarkMode{p.f0_hz, 0.1 * p.kappa_hz, 0.1 * p.kappa_hz});
      x[6] = (d.f_dark_hz - f_ref) / lw_hz;
      x[7] = d.gamma_hz / kappa_scale;
      x[8] = d.g_hz / kappa_scale;
    }
    return x;
  }

  static bool feasible(const Eigen::VectorXd& x, bool dark) {
    if (!(x[1] > 0.0) || !(x[2] > 0.0) || !(x[2] < x[1])) return false;
    if (dark && !(x[7] > 0.0)) return false;
    return x.allFinite();
  }
};

Parameterization make_parameterization(const ComplexSpectrum& s, const ResonanceModelParams& init,
                                       bool dark) {
  auto f = s.frequencies_hz();
  const double span = f.back() - f.front();
  Parameterization pz{};
  pz.f_ref = init.f0_hz;
  pz.lw_hz = init.kappa_hz / two_pi;
  pz.kappa_scale = init.kappa_hz;
  pz.omega_c = two_pi * 0.5 * (f.front() + f.back());
  pz.tau_scale = 1.0 / (two_pi * span);
  pz.dark = dark;
  return pz;
}

struct FitOutcome {
  lm::Result lm;
  ResonanceModelParams params;
};

FitOutcome run_fit(const ComplexSpectrum& spectrum, const Parameterization& pz,
                   const ResonanceModelParams& init, const FitOptions& options) {
  auto f = spectrum.frequencies_hz();
  auto data = spectrum.values();
  const auto n = static_cast<Eigen::Index>(f.size());
  const bool dark = pz.dark;

  auto residual = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r) {
    if (!Parameterization::feasible(x, dark)) return false;
    const auto p = pz.to_params(x);
    std::vector<Complex> model(f.size());
    kernels::active::s11_grid(p, f, model);
    r.resize(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Complex d = model[static_cast<std::size_t>(i)] - data[static_cast<std::size_t>(i)];
      r[i] = d.real();
      r[n + i] = d.imag();
    }
    return true;
  };

  auto jacobian = [&](const Eigen::VectorXd& x, const Eigen::VectorXd&, Eigen::MatrixXd& jac) {
    const int np = pz.size();
    std::vector<ResonanceModelParams> plus, minus;
    std::vector<double> denom;
    const auto base = pz.to_params(x);
    for (int j = 0; j < np; ++j) {
      const double h = 1e-6 * std::max(std::abs(x[j]), 1.0);
      Eigen::VectorXd xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      const bool okp = Parameterization::feasible(xp, dark);
      const bool okm = Parameterization::feasible(xm, dark);
      plus.push_back(okp ? pz.to_params(xp) : base);
      minus.push_back(okm ? pz.to_params(xm) : base);
      denom.push_back((okp ? h : 0.0) + (okm ? h : 0.0));
      if (denom.back() == 0.0) denom.back() = 1.0;
    }
    jac.resize(2 * n, np);
    kernels::active::s11_difference_columns(base, plus, minus, denom, f, jac);
  };

  lm::Options lo;
  lo.max_iterations = options.max_iterations;
  lo.rel_cost_tol = options.rel_cost_tol;
  lo.step_tol = options.step_tol;
  auto res = lm::minimize(residual, pz.from_params(init), lo, {}, jacobian);
  auto params = pz.to_params(res.x);
  if (params.dark) params.dark->g_hz = std::abs(params.dark->g_hz);
  return {std::move(res), params};
}

ResonanceFitResult finish(const ComplexSpectrum& spectrum, const Parameterization& pz,
                          FitOutcome&& out) {
  if (!out.lm.converged)
    throw FitError("resonance fit did not converge after " + std::to_string(out.lm.iterations) +
                   " iterations");
  const auto& p = out.params;
  if (p.kappa_e_hz / p.kappa_hz > 1.0 - 1e-6)
    throw FitError("resonance fit pinned at the physical bound kappa_e -> kappa");

  const auto& c = out.lm.covariance;
  auto sd = [&](int i) { return std::sqrt(std::max(c(i, i), 0.0)); };
  ResonanceFitResult r;
  r.params = p;
  r.param_errors.f0_hz = pz.lw_hz * sd(0);
  r.param_errors.kappa_hz = pz.kappa_scale * sd(1);
  r.param_errors.kappa_e_hz = pz.kappa_scale * sd(2);
  r.param_errors.tau_s = pz.tau_scale * sd(5);
  {
    // a = a_c * exp(-i tau omega_c): propagate through (Re a_c, Im a_c, x_tau).
    const double tau = p.background.tau_s;
    const Complex rot = std::polar(1.0, -tau * pz.omega_c);
    const Complex da_dtau = Complex{0.0, -pz.omega_c * pz.tau_scale} * p.background.a;
    Eigen::Matrix<double, 2, 3> jm;
    jm << rot.real(), -rot.imag(), da_dtau.real(), rot.imag(), rot.real(), da_dtau.imag();
    Eigen::Matrix3d sub;
    const int idx[3] = {3, 4, 5};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) sub(a, b) = c(idx[a], idx[b]);
    const Eigen::Matrix2d ca = jm * sub * jm.transpose();
    r.param_errors.a_re = std::sqrt(std::max(ca(0, 0), 0.0));
    r.param_errors.a_im = std::sqrt(std::max(ca(1, 1), 0.0));
  }
  if (pz.dark)
    r.param_errors.dark = DarkModeErrors{pz.lw_hz * sd(6), pz.kappa_scale * sd(7),
                                         pz.kappa_scale * sd(8)};
  std::tie(r.qi, r.qe) = q_factors(p);
  r.residual_rms = std::sqrt(out.lm.cost / static_cast<double>(spectrum.size()));
  r.n_iterations = out.lm.iterations;
  return r;
}

}  // namespace

ResonanceModelParams estimate_initial_params(const ComplexSpectrum& spectrum) {
  auto f = spectrum.frequencies_hz();
  auto s = spectrum.values();
  const std::size_t n = f.size();
  const std::size_t edge = std::max<std::size_t>(2, n / 10);

  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = two_pi * f[i];

  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(s[i]);
  std::vector<double> edge_mag;
  for (std::size_t i = 0; i < edge; ++i) {
    edge_mag.push_back(mag[i]);
    edge_mag.push_back(mag[n - 1 - i]);
  }
  const double far = median(edge_mag);
  if (!(far > 0.0)) throw FitError("no resolvable dip: zero off-resonant level");

  // Per-quadrature noise from successive differences (Rayleigh median).
  std::vector<double> diffs;
  for (std::size_t i = 1; i < n; ++i) diffs.push_back(std::abs(s[i] - s[i - 1]));
  const double noise = median(diffs) / (std::sqrt(2.0) * std::sqrt(2.0 * std::log(2.0)));

  const auto imin = static_cast<std::size_t>(
      std::distance(mag.begin(), std::min_element(mag.begin(), mag.end())));
  const double depth = far - mag[imin];
  if (!(depth > 3.0 * noise) || depth <= 1e-9 * far)
    throw FitError("no resolvable dip: depth " + std::to_string(depth) + " vs noise " +
                   std::to_string(noise));
  if (imin < 2 || imin + 3 > n)
    throw FitError("dip at the edge of the frequency grid: truncated resonance");

  // Half depth of the normalized |S11|^2 dip, on a lightly smoothed copy.
  std::vector<double> pw(n);
  for (std::size_t i = 0; i < n; ++i) pw[i] = (mag[i] / far) * (mag[i] / far);
  std::vector<double> sm(n);
  const std::size_t hw = std::min<std::size_t>(2, n / 8);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t b = i >= hw ? i - hw : 0;
    const std::size_t e = std::min(n - 1, i + hw);
    double acc = 0.0;
    for (std::size_t j = b; j <= e; ++j) acc += pw[j];
    sm[i] = acc / static_cast<double>(e - b + 1);
  }
  const double pmin = pw[imin];
  const double half = 0.5 * (1.0 + pmin);
  auto crossing = [&](std::size_t i, std::size_t j) {
    // sm[i] < half <= sm[j]
    const double t = (half - sm[i]) / (sm[j] - sm[i]);
    return f[i] + t * (f[j] - f[i]);
  };
  std::size_t li = imin;
  while (li > 0 && sm[li - 1] < half) --li;
  std::size_t ri = imin;
  while (ri + 1 < n && sm[ri + 1] < half) ++ri;
  if (li == 0 || ri + 1 == n)
    throw FitError("dip at the edge of the frequency grid: truncated resonance");
  const double f_left = crossing(li, li - 1);
  const double f_right = crossing(ri, ri + 1);

  ResonanceModelParams p;
  p.f0_hz = f[imin];
  p.kappa_hz = two_pi * std::max(f_right - f_left, f[imin + 1] - f[imin]);
  const double contrast = std::clamp(mag[imin] / far, 0.0, 0.98);
  p.kappa_e_hz = p.kappa_hz * (1.0 - contrast) / 2.0;

  // Cable delay from the phase slope at both edges, then the complex scale.
  const double tau = 0.5 * (phase_slope(w, s, 0, edge) + phase_slope(w, s, n - edge, n));
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < edge; ++i) {
    acc += s[i] * std::polar(1.0, -tau * w[i]) / std::abs(s[i]);
    acc += s[n - 1 - i] * std::polar(1.0, -tau * w[n - 1 - i]) / std::abs(s[n - 1 - i]);
  }
  p.background.tau_s = tau;
  p.background.a = std::polar(far, std::arg(acc));
  return p;
}

ResonanceFitResult fit_resonance(const ComplexSpectrum& spectrum, ModelKind kind,
                                 std::optional<ResonanceModelParams> init,
                                 const FitOptions& options) {
  ResonanceModelParams start = init ? *init : estimate_initial_params(spectrum);
  start.validate();

  if (kind == ModelKind::lorentzian) {
    start.dark.reset();
    const auto pz = make_parameterization(spectrum, start, false);
    return finish(spectrum, pz, run_fit(spectrum, pz, start, options));
  }

  if (start.dark) {
    const auto pz = make_parameterization(spectrum, start, true);
    return finish(spectrum, pz, run_fit(spectrum, pz, start, options));
  }

  // Lorentzian prefit, then seed the dark mode at the strongest residual feature.
  start.dark.reset();
  const auto pre_pz = make_parameterization(spectrum, start, false);
  auto pre = run_fit(spectrum, pre_pz, start, options);
  const auto& lp = pre.params;

  auto f = spectrum.frequencies_hz();
  auto data = spectrum.values();
  const std::size_t n = f.size();
  std::vector<double> resid(n);
  for (std::size_t i = 0; i < n; ++i) resid[i] = std::abs(data[i] - eval_s11(lp, f[i]));
  const std::size_t hw = std::max<std::size_t>(1, n / 200);
  std::vector<double> sm(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t b = i >= hw ? i - hw : 0;
    const std::size_t e = std::min(n - 1, i + hw);
    for (std::size_t j = b; j <= e; ++j) sm[i] += resid[j];
    sm[i] /= static_cast<double>(e - b + 1);
  }
  const auto ipk =
      static_cast<std::size_t>(std::distance(sm.begin(), std::max_element(sm.begin(), sm.end())));

  std::optional<FitOutcome> best;
  std::optional<Parameterization> best_pz;
  std::string last_error = "no dark-mode start converged";
  for (double gamma_frac : {0.125, 0.35}) {
    for (double g_frac : {0.125, 0.35}) {
      ResonanceModelParams s0 = lp;
      s0.dark = DarkMode{f[ipk], gamma_frac * lp.kappa_hz, g_frac * lp.kappa_hz};
      const auto pz = make_parameterization(spectrum, s0, true);
      try {
        auto out = run_fit(spectrum, pz, s0, options);
        if (!out.lm.converged) continue;
        if (out.params.kappa_e_hz / out.params.kappa_hz > 1.0 - 1e-6) continue;
        if (!best || out.lm.cost < best->lm.cost) {
          best = std::move(out);
          best_pz = pz;
        }
      } catch (const FitError& e) {
        last_error = e.what();
      }
    }
  }
  if (!best) throw FitError(last_error);
  return finish(spectrum, *best_pz, std::move(*best));
}

}  // namespace sawkit::resonance
