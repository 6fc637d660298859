#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sawkit/error.hpp"
#include "sawkit/resonance.hpp"
#include "sawkit/synth.hpp"

using namespace sawkit;
using constants::two_pi;

namespace {

resonance::ResonanceModelParams lorentzian(double f0, double kappa, double kappa_e) {
  resonance::ResonanceModelParams p;
  p.f0_hz = f0;
  p.kappa_hz = kappa;
  p.kappa_e_hz = kappa_e;
  return p;
}

}  // namespace

TEST_CASE("critical coupling gives zero reflection on resonance") {
  const auto p = lorentzian(688.4e6, two_pi * 150e3, two_pi * 75e3);
  CHECK(std::abs(resonance::eval_s11(p, 688.4e6)) == 0.0);
}

TEST_CASE("far off resonance the reflection returns to the background") {
  auto p = lorentzian(688.4e6, two_pi * 150e3, two_pi * 50e3);
  CHECK(std::abs(resonance::eval_s11(p, 1e12) - Complex(1.0, 0.0)) < 1e-6);
  p.background.a = std::polar(0.7, 0.3);
  p.background.tau_s = 30e-9;
  const double f = 1e12;
  const Complex bg = p.background.a * std::polar(1.0, p.background.tau_s * two_pi * f);
  CHECK(std::abs(resonance::eval_s11(p, f) - bg) < 1e-6);
}

TEST_CASE("decoupled cavity is the bare background") {
  auto p = lorentzian(688.4e6, two_pi * 150e3, two_pi * 1e-9);
  p.background.a = {0.4, -0.2};
  p.background.tau_s = 12e-9;
  for (double f : {688.3e6, 688.4e6, 688.5e6}) {
    const Complex bg = p.background.a * std::polar(1.0, p.background.tau_s * two_pi * f);
    CHECK(std::abs(resonance::eval_s11(p, f) - bg) < 1e-12);
  }
}

TEST_CASE("model matches a direct real-arithmetic evaluation") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    auto p = lorentzian(600e6 + 200e6 * u(rng), two_pi * (50e3 + 150e3 * u(rng)), 0.0);
    p.kappa_e_hz = p.kappa_hz * (0.1 + 0.8 * u(rng));
    resonance::DarkMode d;
    d.f_dark_hz = p.f0_hz + 200e3 * (u(rng) - 0.5);
    d.gamma_hz = two_pi * (5e3 + 50e3 * u(rng));
    d.g_hz = two_pi * 100e3 * u(rng);
    p.dark = d;
    const double f = p.f0_hz + 300e3 * (u(rng) - 0.5);
    const auto want = oracle::s11(f, p.f0_hz, p.kappa_hz, p.kappa_e_hz, d.g_hz, d.f_dark_hz, d.gamma_hz);
    const Complex got = resonance::eval_s11(p, f);
    CHECK(std::abs(got.real() - static_cast<double>(want.real())) < 1e-12);
    CHECK(std::abs(got.imag() - static_cast<double>(want.imag())) < 1e-12);
  }
}

TEST_CASE("strong dark mode shields the response at its own frequency") {
  auto p = lorentzian(688.4e6, two_pi * 150e3, two_pi * 50e3);
  p.dark = resonance::DarkMode{688.4e6, two_pi * 1e3, two_pi * 200e3};  // g^2/gamma >> kappa
  CHECK(std::abs(std::abs(resonance::eval_s11(p, 688.4e6)) - 1.0) < 0.01);
}

TEST_CASE("quality factors") {
  const double f0 = 690e6;
  const auto p = lorentzian(f0, two_pi * (49.3e3 + 101.5e3), two_pi * 49.3e3);
  const auto [qi, qe] = resonance::q_factors(p);
  CHECK(qi == doctest::Approx(f0 / 101.5e3));
  CHECK(qe == doctest::Approx(f0 / 49.3e3));
  CHECK(qi == doctest::Approx(6.8e3).epsilon(0.01));
  CHECK(qe == doctest::Approx(1.4e4).epsilon(0.01));

  const auto sym = resonance::q_factors(lorentzian(f0, 2.0, 1.0));
  CHECK(sym.first == doctest::Approx(sym.second));
  CHECK_THROWS_AS(resonance::q_factors(lorentzian(f0, 1.0, 1.0)), DomainError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(lorentzian(1e9, 1.0, 2.0).validate(), DomainError);
  CHECK_THROWS_AS(lorentzian(1e9, -1.0, 0.5).validate(), DomainError);
  auto p = lorentzian(1e9, 2.0, 1.0);
  p.dark = resonance::DarkMode{1e9, -1.0, 1.0};
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("initial guess lands within one grid step of the true frequency") {
  const auto spec = synth::s11_spec_from_q(688.4e6, 6.8e3, 1.4e4);
  const double lw = spec.kappa_hz / two_pi;
  const auto grid = synth::linear_grid(688.4e6 - 4 * lw, 688.4e6 + 4 * lw, 2001);
  const auto s = synth::synth_s11(spec, grid, 0.0, 1);
  const auto p0 = resonance::estimate_initial_params(s);
  CHECK(std::abs(p0.f0_hz - 688.4e6) <= grid[1] - grid[0]);
  CHECK_FALSE(p0.dark.has_value());
}

TEST_CASE("flat trace and edge dip are rejected") {
  const auto grid = synth::linear_grid(688e6, 689e6, 501);
  std::vector<Complex> flat(grid.size(), Complex(1.0, 0.0));
  CHECK_THROWS_AS(resonance::estimate_initial_params(ComplexSpectrum(grid, flat)), FitError);

  const auto spec = synth::s11_spec_from_q(688e6 + 1e3, 6.8e3, 1.4e4);
  const auto edge = synth::synth_s11(spec, grid, 0.0, 1);
  CHECK_THROWS_AS(resonance::estimate_initial_params(edge), FitError);
}

TEST_CASE("noiseless trace is recovered exactly") {
  auto spec = synth::s11_spec_from_q(688.4e6, 6.8e3, 1.4e4);
  spec.a = std::polar(0.8, 1.1);
  spec.tau_s = 25e-9;
  const double lw = spec.kappa_hz / two_pi;
  const auto grid = synth::linear_grid(688.4e6 - 4 * lw, 688.4e6 + 4 * lw, 4001);
  const auto fit = resonance::fit_resonance(synth::synth_s11(spec, grid, 0.0, 1), resonance::ModelKind::lorentzian);
  CHECK(fit.residual_rms < 1e-10);
  CHECK(fit.qi == doctest::Approx(6.8e3).epsilon(1e-8));
  CHECK(fit.qe == doctest::Approx(1.4e4).epsilon(1e-8));
  CHECK(fit.params.f0_hz == doctest::Approx(688.4e6).epsilon(1e-12));
}

TEST_CASE("noisy 688.4 MHz mode: Q within 2 percent, f0 within 1e-7") {
  const auto spec = synth::s11_spec_from_q(688.4e6, 6.8e3, 1.4e4);
  const double lw = spec.kappa_hz / two_pi;
  const auto grid = synth::linear_grid(688.4e6 - 4 * lw, 688.4e6 + 4 * lw, 16001);
  const auto s = synth::synth_s11(spec, grid, synth::quadrature_sigma_for_snr_db(40.0), 42);
  const auto fit = resonance::fit_resonance(s, resonance::ModelKind::lorentzian);
  CHECK(fit.qi == doctest::Approx(6.8e3).epsilon(0.02));
  CHECK(fit.qe == doctest::Approx(1.4e4).epsilon(0.02));
  CHECK(std::abs(fit.params.f0_hz / 688.4e6 - 1.0) < 1e-7);
  CHECK(fit.param_errors.f0_hz > 0.0);
}

TEST_CASE("dark mode 75 kHz above the primary is recovered") {
  auto spec = synth::s11_spec_from_q(688.4e6, 6.8e3, 1.4e4);
  spec.dark = synth::DarkModeSpec{two_pi * 30e3, 75e3, two_pi * 20e3};
  const double lw = spec.kappa_hz / two_pi;
  const auto grid = synth::linear_grid(688.4e6 - 4 * lw, 688.4e6 + 4 * lw, 8001);
  const auto s = synth::synth_s11(spec, grid, synth::quadrature_sigma_for_snr_db(40.0), 5);
  const auto fit = resonance::fit_resonance(s, resonance::ModelKind::dark_mode);
  REQUIRE(fit.params.dark.has_value());
  CHECK(fit.params.dark->f_dark_hz - fit.params.f0_hz == doctest::Approx(75e3).epsilon(0.05));
  REQUIRE(fit.param_errors.dark.has_value());
}
