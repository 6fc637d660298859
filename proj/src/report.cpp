#include "sawkit/report.hpp"

#include <cmath>

#include "sawkit/svg.hpp"

namespace sawkit::report {

std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const resonance::ResonanceModelParams& p) {
  Json j;
  j["f0_hz"] = p.f0_hz;
  j["kappa_hz"] = p.kappa_hz;
  j["kappa_e_hz"] = p.kappa_e_hz;
  if (p.dark)
    j["dark"] = {{"f_dark_hz", p.dark->f_dark_hz}, {"gamma_hz", p.dark->gamma_hz}, {"g_hz", p.dark->g_hz}};
  else
    j["dark"] = nullptr;
  j["background"] = {{"a_re", p.background.a.real()},
                     {"a_im", p.background.a.imag()},
                     {"tau_s", p.background.tau_s}};
  return j;
}

Json to_json(const resonance::ResonanceFitResult& r) {
  Json e;
  e["f0_hz"] = r.param_errors.f0_hz;
  e["kappa_hz"] = r.param_errors.kappa_hz;
  e["kappa_e_hz"] = r.param_errors.kappa_e_hz;
  if (r.param_errors.dark)
    e["dark"] = {{"f_dark_hz", r.param_errors.dark->f_dark_hz},
                 {"gamma_hz", r.param_errors.dark->gamma_hz},
                 {"g_hz", r.param_errors.dark->g_hz}};
  else
    e["dark"] = nullptr;
  e["background"] = {{"a_re", r.param_errors.a_re},
                     {"a_im", r.param_errors.a_im},
                     {"tau_s", r.param_errors.tau_s}};
  return {{"params", to_json(r.params)},
          {"param_errors", e},
          {"qi", r.qi},
          {"qe", r.qe},
          {"residual_rms", r.residual_rms},
          {"n_iterations", r.n_iterations}};
}

Json to_json(const tls::TlsFitResult& r) {
  return {{"f_delta_tls", r.f_delta_tls},
          {"f_delta_err", r.f_delta_err},
          {"f0_hz", r.f0_hz},
          {"reference_temperature_K", r.reference_temperature_K},
          {"residual_rms", r.residual_rms},
          {"nonpositive_warning", r.nonpositive_warning}};
}

Json to_json(const tls::PowerModelParams& p) {
  return {{"f_delta_tls", p.f_delta_tls}, {"n_c", p.n_c},
          {"beta", p.beta},               {"q_i_res", p.q_i_res},
          {"temperature_K", p.temperature_K}, {"f0_hz", p.f0_hz}};
}

Json to_json(const tls::PowerFitResult& r) {
  return {{"params", to_json(r.params)},
          {"errors",
           {{"f_delta_tls", r.errors.f_delta_tls},
            {"n_c", r.errors.n_c},
            {"beta", r.errors.beta},
            {"q_i_res", r.errors.q_i_res}}},
          {"beta_fixed", r.beta_fixed},
          {"beta_unidentified", r.beta_unidentified},
          {"residual_rms", r.residual_rms},
          {"n_iterations", r.n_iterations}};
}

Json to_json(const xps::XpsQuantReport& r) {
  return {{"atomic_percent", r.atomic_percent},
          {"ratios_to_nb", r.ratios_to_nb},
          {"band_areas", r.band_areas}};
}

Json to_json(const afm::StepHeightResult& r) {
  return {{"centers_m", r.centers_m},
          {"center_errors_m", r.center_errors_m},
          {"sigmas_m", r.sigmas_m},
          {"step_heights_m", r.step_heights_m},
          {"step_errors_m", r.step_errors_m},
          {"mean_step_m", r.mean_step_m},
          {"mean_step_err_m", r.mean_step_err_m},
          {"width_uncertainty_m", r.width_uncertainty_m},
          {"histogram_bin_width_m", r.histogram.bin_width_m},
          {"n_iterations", r.n_iterations}};
}

Json to_json(const walkoff::ZeroCrossing& z) {
  return {{"theta_deg", z.theta_deg},
          {"slope_deg_per_deg", z.slope_deg_per_deg},
          {"uncertainty_deg", z.uncertainty_deg}};
}

Json to_json(const walkoff::NearZeroMinimum& m) {
  return {{"theta_deg", m.theta_deg}, {"eta_deg", m.eta_deg}};
}

std::string resonance_svg(const ComplexSpectrum& data, const resonance::ResonanceFitResult& fit) {
  auto f = data.frequencies_hz();
  auto v = data.values();
  auto mag_d = svg::make_series("#7f7f7f", "data", true);
  auto mag_f = svg::make_series("#d62728", "fit");
  auto ph_d = svg::make_series("#7f7f7f", "data", true);
  auto ph_f = svg::make_series("#d62728", "fit");
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double mhz = f[i] * 1e-6;
    const Complex m = resonance::eval_s11(fit.params, f[i]);
    mag_d.x.push_back(mhz);
    mag_d.y.push_back(20.0 * std::log10(std::abs(v[i])));
    mag_f.x.push_back(mhz);
    mag_f.y.push_back(20.0 * std::log10(std::abs(m)));
    ph_d.x.push_back(mhz);
    ph_d.y.push_back(std::arg(v[i]));
    ph_f.x.push_back(mhz);
    ph_f.y.push_back(std::arg(m));
  }
  svg::Panel mag{"|S11|", "frequency (MHz)", "|S11| (dB)", {mag_d, mag_f}, {fit.params.f0_hz * 1e-6}};
  svg::Panel ph{"arg S11", "frequency (MHz)", "phase (rad)", {ph_d, ph_f}, {fit.params.f0_hz * 1e-6}};
  return svg::render({mag, ph});
}

std::string xps_svg(const std::vector<XpsPanel>& panels) {
  static const char* colors[] = {"#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  std::vector<svg::Panel> out;
  for (const auto& p : panels) {
    const auto& s = p.shirley;
    svg::Panel panel{p.line, "binding energy (eV)", "counts", {}, {}};
    panel.series.push_back({s.energy_ev, s.counts, "#7f7f7f", "data", true});
    panel.series.push_back({s.energy_ev, s.background, "#1f77b4", "Shirley background"});
    std::size_t c = 0;
    for (const auto& b : p.bands) {
      auto band = svg::make_series(colors[c++ % 5], b.name);
      for (std::size_t i = 0; i < s.energy_ev.size(); ++i) {
        band.x.push_back(s.energy_ev[i]);
        band.y.push_back(s.background[i] + xps::pseudo_voigt(b, s.energy_ev[i]));
      }
      panel.series.push_back(std::move(band));
    }
    out.push_back(std::move(panel));
  }
  return svg::render(out);
}

std::string afm_svg(const afm::Histogram& hist, const afm::StepHeightResult* steps) {
  auto counts = svg::make_series("#7f7f7f", "histogram", true);
  for (std::size_t k = 0; k < hist.counts.size(); ++k) {
    counts.x.push_back(hist.center(k) * 1e12);
    counts.y.push_back(static_cast<double>(hist.counts[k]));
  }
  svg::Panel panel{"height histogram", "height (pm)", "pixels per bin", {counts}, {}};
  if (steps) {
    auto total = svg::make_series("#d62728", "three-Gaussian fit");
    for (std::size_t k = 0; k < hist.counts.size(); ++k) {
      const double x = hist.center(k);
      double y = 0.0;
      for (std::size_t g = 0; g < steps->centers_m.size(); ++g) {
        const double z = (x - steps->centers_m[g]) / steps->sigmas_m[g];
        y += steps->amplitudes[g] * std::exp(-0.5 * z * z);
      }
      total.x.push_back(x * 1e12);
      total.y.push_back(y);
    }
    panel.series.push_back(std::move(total));
    for (double c : steps->centers_m) panel.marks_x.push_back(c * 1e12);
  }
  return svg::render({panel});
}

std::string walkoff_svg(const WalkoffCurve& raw, const WalkoffCurve& smoothed,
                        const std::vector<walkoff::ZeroCrossing>& zeros) {
  auto r = svg::make_series("#7f7f7f", "raw", true);
  r.x.assign(raw.theta_deg().begin(), raw.theta_deg().end());
  r.y.assign(raw.eta_deg().begin(), raw.eta_deg().end());
  auto s = svg::make_series("#1f77b4", "smoothed");
  s.x.assign(smoothed.theta_deg().begin(), smoothed.theta_deg().end());
  s.y.assign(smoothed.eta_deg().begin(), smoothed.eta_deg().end());
  svg::Panel panel{"walk-off angle", "drive angle from Z (deg)", "eta (deg)", {r, s}, {}};
  for (const auto& z : zeros) panel.marks_x.push_back(z.theta_deg);
  return svg::render({panel});
}

}  // namespace sawkit::report
