#include <doctest.h>

#include <cmath>

#include "sawkit/constants.hpp"
#include "sawkit/error.hpp"
#include "sawkit/synth.hpp"
#include "sawkit/xps.hpp"

using namespace sawkit;

namespace {

xps::Band band(double center, double sigma, double gamma, double mix, double area) {
  xps::Band b;
  b.name = "b";
  b.center_ev = center;
  b.sigma_ev = sigma;
  b.gamma_ev = gamma;
  b.mix = mix;
  b.amplitude = area;
  return b;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

}  // namespace

TEST_CASE("pseudo-Voigt is area normalized") {
  const auto g = synth::linear_grid(400.0, 660.0, 260001);
  for (double mix : {0.0, 0.3, 1.0}) {
    const auto b = band(530.0, 0.6, 0.4, mix, 7.0);
    std::vector<double> y;
    for (double e : g) y.push_back(xps::pseudo_voigt(b, e));
    // Lorentzian tails beyond +-130 eV carry about 2 gamma / (pi 130) of the area.
    CHECK(trapezoid(g, y) == doctest::Approx(7.0 * (1.0 - mix * 2.0 * 0.4 / (constants::pi * 130.0))).epsilon(1e-6));
  }
}

TEST_CASE("charge shift") {
  const auto g = synth::linear_grid(200.0, 218.0, 181);
  auto nb = synth::synth_xps({ElementLine::parse("Nb3d"), synth::nb3d_doublet_bands(207.3, 1000.0), 50.0, 20.0, 0.0, true}, g, 1);
  const auto o = synth::synth_xps({ElementLine::parse("O1s"), {band(530.0, 0.6, 0.4, 0.3, 500.0)}, 50.0, 20.0, 0.0, true},
                                  synth::linear_grid(520.0, 540.0, 201), 1);

  const auto none = xps::charge_shift({nb, o}, 207.3);
  CHECK(none.shift_ev == 0.0);

  const auto two = xps::charge_shift({nb, o}, 209.3);
  CHECK(two.shift_ev == doctest::Approx(-2.0));
  for (std::size_t i = 0; i < o.size(); ++i)
    CHECK(two.spectra[1].binding_energy_ev()[i] == doctest::Approx(o.binding_energy_ev()[i] - 2.0));

  const auto shifted = synth::synth_xps(
      {ElementLine::parse("Nb3d"), synth::nb3d_doublet_bands(208.4, 1000.0), 50.0, 20.0, 0.0, true},
      synth::linear_grid(201.0, 219.0, 181), 2);
  const auto autod = xps::charge_shift({shifted});
  CHECK(std::abs(autod.measured_nb3d52_ev - 208.4) <= 0.1);
  CHECK_THROWS_AS(xps::charge_shift({o}), DomainError);
}

TEST_CASE("Shirley: zero counts give zero background") {
  const auto g = synth::linear_grid(520.0, 540.0, 101);
  const auto r = xps::shirley_background(XpsSpectrum(g, std::vector<double>(g.size(), 0.0), ElementLine::parse("O1s")));
  for (double b : r.background) CHECK(b == 0.0);
}

TEST_CASE("Shirley: a pure step is its own background") {
  const auto g = synth::linear_grid(525.0, 535.0, 40);
  std::vector<double> c;
  for (double e : g) c.push_back(e < 530.0 ? 100.0 : 160.0);
  const auto r = xps::shirley_background(XpsSpectrum(g, c, ElementLine::parse("O1s")));
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(r.background[i] - c[i]) <= 60.0 * 1e-6 + 1e-9);
  CHECK(r.iterations <= 50);
}

TEST_CASE("Shirley: peak on a step keeps its area and stays under the data") {
  const auto g = synth::linear_grid(505.0, 560.0, 551);
  const auto b = band(531.0, 0.7, 0.4, 0.3, 5000.0);
  const auto s = synth::synth_xps({ElementLine::parse("O1s"), {b}, 200.0, 150.0, 0.0, true}, g, 1);
  const auto r = xps::shirley_background(s);
  CHECK(r.net_area() == doctest::Approx(5000.0).epsilon(0.01));
  for (std::size_t i = 0; i < r.counts.size(); ++i) CHECK(r.background[i] <= r.counts[i]);
}

TEST_CASE("Shirley: monotone between endpoint levels on a smooth step") {
  const auto g = synth::linear_grid(520.0, 540.0, 201);
  std::vector<double> c;
  for (double e : g) c.push_back(100.0 + 50.0 * (1.0 + std::tanh((e - 530.0) / 1.5)));
  const auto r = xps::shirley_background(XpsSpectrum(g, c, ElementLine::parse("O1s")));
  for (std::size_t i = 1; i < r.background.size(); ++i) CHECK(r.background[i] >= r.background[i - 1]);
  CHECK(r.background.front() >= 100.0);
  CHECK(r.background.back() <= 200.0);
}

TEST_CASE("Shirley: window handling") {
  const auto g = synth::linear_grid(520.0, 540.0, 201);
  const auto s = synth::synth_xps({ElementLine::parse("O1s"), {band(530.0, 0.6, 0.4, 0.3, 500.0)}, 50.0, 20.0, 0.0, true}, g, 1);
  const auto r = xps::shirley_background(s, xps::Window{525.0, 535.0});
  CHECK(r.energy_ev.front() >= 525.0);
  CHECK(r.energy_ev.back() <= 535.0);
  CHECK_THROWS_AS(xps::shirley_background(s, xps::Window{600.0, 610.0}), DomainError);
  CHECK_THROWS_AS(xps::shirley_background(s, xps::Window{530.0, 530.2}), DomainError);
}

TEST_CASE("band fit: single Gaussian band is recovered") {
  const auto g = synth::linear_grid(520.0, 540.0, 401);
  const auto truth = band(530.2, 0.65, 0.4, 0.0, 1234.0);
  std::vector<double> y;
  for (double e : g) y.push_back(xps::pseudo_voigt(truth, e));
  xps::BandModel m{{band(530.0, 0.5, 0.5, 0.0, 0.0)}};
  const auto r = xps::fit_bands(g, y, m);
  CHECK(r.model.bands[0].center_ev == doctest::Approx(530.2).epsilon(1e-3 / 530.0));
  CHECK(r.model.bands[0].sigma_ev == doctest::Approx(0.65).epsilon(1e-3));
  CHECK(r.areas[0] == doctest::Approx(1234.0).epsilon(1e-3));
}

TEST_CASE("band fit: organic bands near zero on oxide-only O1s") {
  const auto g = synth::linear_grid(524.0, 540.0, 161);
  const auto s = synth::synth_xps({ElementLine::parse("O1s"), {band(530.0, 0.55, 0.35, 0.3, 2e4)}, 300.0, 100.0, 4.0, true}, g, 6);
  const auto sh = xps::shirley_background(s);
  std::vector<double> net;
  for (std::size_t i = 0; i < sh.counts.size(); ++i) net.push_back(sh.counts[i] - sh.background[i]);
  const auto r = xps::fit_bands(sh.energy_ev, net, xps::default_o1s_model());
  REQUIRE(r.areas.size() == 3);
  CHECK(r.areas[0] == doctest::Approx(2e4).epsilon(0.02));
  for (int k : {1, 2}) CHECK(r.areas[k] < std::max(3.0 * r.area_errors[k], 0.01 * r.areas[0]));
}

TEST_CASE("band fit: areas add up to the net counts") {
  const auto g = synth::linear_grid(522.0, 540.0, 181);
  std::vector<xps::Band> truth = {band(530.0, 0.55, 0.35, 0.3, 9e3), band(531.5, 0.6, 0.4, 0.3, 6e2),
                                  band(533.0, 0.6, 0.4, 0.3, 3e2)};
  const auto s = synth::synth_xps({ElementLine::parse("O1s"), truth, 300.0, 80.0, 2.0, true}, g, 3);
  const auto sh = xps::shirley_background(s);
  std::vector<double> net;
  for (std::size_t i = 0; i < sh.counts.size(); ++i) net.push_back(sh.counts[i] - sh.background[i]);
  const auto r = xps::fit_bands(sh.energy_ev, net, xps::default_o1s_model());
  const double total = r.areas[0] + r.areas[1] + r.areas[2];
  CHECK(total == doctest::Approx(sh.net_area()).epsilon(0.02));
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(r.model.bands[k].center_ev >= xps::default_o1s_model().bands[k].center_ev - 0.5);
    CHECK(r.model.bands[k].center_ev <= xps::default_o1s_model().bands[k].center_ev + 0.5);
  }
}

TEST_CASE("band fit: two identical bands are flagged degenerate") {
  const auto g = synth::linear_grid(520.0, 540.0, 201);
  std::vector<double> y;
  for (double e : g) y.push_back(xps::pseudo_voigt(band(530.0, 0.6, 0.4, 0.3, 1000.0), e));
  xps::BandModel m{{band(530.0, 0.6, 0.4, 0.3, 0.0), band(530.0, 0.6, 0.4, 0.3, 0.0)}};
  const auto r = xps::fit_bands(g, y, m);
  CHECK(r.degenerate);
}

TEST_CASE("atomic percentages") {
  const xps::SensitivityTable eq({{"O1s", 1.0}, {"Nb3d", 1.0}});
  auto r = xps::atomic_percentages({{"O1s", 5.0}, {"Nb3d", 5.0}}, eq);
  CHECK(r.atomic_percent.at("O1s") == 50.0);
  CHECK(r.atomic_percent.at("Nb3d") == 50.0);
  r = xps::atomic_percentages({{"O1s", 3.0}}, eq, false);
  CHECK(r.atomic_percent.at("O1s") == 100.0);

  const xps::SensitivityTable t({{"O1s", 0.733}, {"Nb3d", 2.517}, {"Li1s", 0.028}});
  const auto p = xps::atomic_percentages({{"O1s", 67 * 0.733}, {"Nb3d", 22.3 * 2.517}, {"Li1s", 10 * 0.028}}, t);
  CHECK(p.ratios_to_nb.at("Li/Nb") == doctest::Approx(0.448).epsilon(1e-3));
  CHECK(p.ratios_to_nb.at("O/Nb") == doctest::Approx(3.00).epsilon(2e-3));
  CHECK(std::abs(p.ratios_to_nb.at("Li/Nb") - 0.46) <= 0.09);

  const auto scaled = xps::atomic_percentages({{"O1s", 4 * (67 * 0.733)}, {"Nb3d", 4 * (22.3 * 2.517)}, {"Li1s", 4 * (10 * 0.028)}}, t);
  CHECK(scaled.atomic_percent == p.atomic_percent);

  CHECK_THROWS_AS(xps::atomic_percentages({{"Fe2p", 1.0}}, t), DomainError);
}
