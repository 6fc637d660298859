#include <doctest.h>

#include <cmath>

#include "sawkit/io.hpp"
#include "sawkit/report.hpp"
#include "sawkit/svg.hpp"
#include "sawkit/synth.hpp"

using namespace sawkit;

TEST_CASE("grids") {
  const auto l = synth::linear_grid(1.0, 2.0, 5);
  CHECK(l.front() == 1.0);
  CHECK(l.back() == 2.0);
  CHECK(l[2] == 1.5);
  const auto g = synth::log_grid(1.0, 1e4, 5);
  CHECK(g.front() == 1.0);
  CHECK(g.back() == 1e4);
  CHECK(g[2] == doctest::Approx(100.0));
}

TEST_CASE("snr to per-quadrature sigma") {
  CHECK(synth::quadrature_sigma_for_snr_db(40.0) == doctest::Approx(0.01 / std::sqrt(2.0)));
}

TEST_CASE("generators are deterministic per seed") {
  const auto spec = synth::s11_spec_from_q(688.4e6, 6.8e3, 1.4e4);
  const auto f = synth::linear_grid(688.3e6, 688.5e6, 201);
  CHECK(io::to_s11_csv(synth::synth_s11(spec, f, 0.01, 3)) == io::to_s11_csv(synth::synth_s11(spec, f, 0.01, 3)));
  CHECK(io::to_s11_csv(synth::synth_s11(spec, f, 0.01, 3)) != io::to_s11_csv(synth::synth_s11(spec, f, 0.01, 4)));

  synth::TerraceSpec t;
  t.nx = t.ny = 64;
  CHECK(io::to_afm_grid(synth::synth_afm_terraces(t, 1)) == io::to_afm_grid(synth::synth_afm_terraces(t, 1)));
}

TEST_CASE("q factors survive the rate conversion") {
  const auto spec = synth::s11_spec_from_q(690e6, 6.8e3, 1.4e4);
  resonance::ResonanceModelParams p;
  p.f0_hz = spec.f0_hz;
  p.kappa_hz = spec.kappa_hz;
  p.kappa_e_hz = spec.kappa_e_hz;
  const auto [qi, qe] = resonance::q_factors(p);
  CHECK(qi == doctest::Approx(6.8e3).epsilon(1e-12));
  CHECK(qe == doctest::Approx(1.4e4).epsilon(1e-12));
}

TEST_CASE("terrace image has three equal-share levels") {
  synth::TerraceSpec t;
  t.nx = t.ny = 96;
  t.noise_m = 0.0;
  const auto img = synth::synth_afm_terraces(t, 1);
  std::size_t n0 = 0, n1 = 0, n2 = 0;
  for (double h : img.heights_m()) {
    if (std::abs(h) < 1e-15) ++n0;
    else if (std::abs(h - t.step_m) < 1e-15) ++n1;
    else if (std::abs(h - 2 * t.step_m) < 1e-15) ++n2;
  }
  CHECK(n0 + n1 + n2 == img.heights_m().size());
  CHECK(n0 == n1);
  CHECK(n1 == n2);
}

TEST_CASE("canonical json sorts keys and ends with a newline") {
  report::Json j = {{"b", 1}, {"a", {{"d", 2.5}, {"c", nullptr}}}};
  const auto s = report::canonical(j);
  CHECK(s.back() == '\n');
  CHECK(s.find("\"a\"") < s.find("\"b\""));
  CHECK(s.find("\"c\"") < s.find("\"d\""));
}

TEST_CASE("resonance json carries the documented fields") {
  const auto spec = synth::s11_spec_from_q(688.4e6, 6.8e3, 1.4e4);
  const double lw = spec.kappa_hz / constants::two_pi;
  const auto s = synth::synth_s11(spec, synth::linear_grid(688.4e6 - 4 * lw, 688.4e6 + 4 * lw, 2001), 1e-3, 1);
  const auto fit = resonance::fit_resonance(s, resonance::ModelKind::lorentzian);
  const auto j = report::to_json(fit);
  for (const char* k : {"params", "param_errors", "qi", "qe", "residual_rms", "n_iterations"}) CHECK(j.contains(k));
  CHECK(j["params"]["dark"].is_null());
  CHECK(j["params"]["background"].contains("tau_s"));

  const auto svg = report::resonance_svg(s, fit);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("dB") != std::string::npos);
  CHECK(svg.find("phase") != std::string::npos);
}

TEST_CASE("svg renders panels, escapes text and survives empty series") {
  svg::Panel p;
  p.title = "a < b & c";
  p.xlabel = "x";
  p.ylabel = "y";
  auto s = svg::make_series("#d62728", "data", true);
  s.x = {0.0, 1.0, 2.0};
  s.y = {1.0, 0.5, 2.0};
  p.series.push_back(s);
  p.series.push_back(svg::make_series("#000000", "empty"));
  p.marks_x = {1.0};
  const auto out = svg::render({p, p});
  CHECK(out.find("a &lt; b &amp; c") != std::string::npos);
  CHECK(out.find("nan") == std::string::npos);
}

TEST_CASE("walkoff svg marks zeros") {
  const auto c = synth::synth_walkoff(synth::linear_grid(-90.0, 90.0, 181), 2.0, -30.0, 0.0, 1);
  const auto z = walkoff::find_zero_crossings(c);
  const auto out = report::walkoff_svg(c, c, z);
  CHECK(out.find("<svg") != std::string::npos);
  CHECK(report::to_json(z.front()).contains("theta_deg"));
}
