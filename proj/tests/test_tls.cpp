#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sawkit/constants.hpp"
#include "sawkit/error.hpp"
#include "sawkit/synth.hpp"
#include "sawkit/tls.hpp"

using namespace sawkit;

TEST_CASE("digamma special value and symmetry") {
  CHECK(tls::re_digamma_half_plus_imag(0.0) ==
        doctest::Approx(-1.9635100260214235).epsilon(1e-15));
  for (double y : {0.3, 2.0, 7.9, 8.0, 50.0}) CHECK(tls::re_digamma_half_plus_imag(-y) == tls::re_digamma_half_plus_imag(y));
}

TEST_CASE("digamma agrees with the series on both sides of the asymptotic switch") {
  for (double y : {1.0, 7.999, 8.0, 8.001, 3e3}) {
    const double want = static_cast<double>(oracle::re_digamma_half_series(y));
    CHECK(std::abs(tls::re_digamma_half_plus_imag(y) - want) <= 1e-10);
  }
}

TEST_CASE("digamma large-y behaviour is ln y") {
  const double y = 1e6;
  // Re psi(1/2 + i y) = ln y + 1 / (24 y^2) + ...
  CHECK(tls::re_digamma_half_plus_imag(y) - std::log(y) == doctest::Approx(1.0 / (24.0 * y * y)).epsilon(1e-6));
}

TEST_CASE("reduced frequency and bracket domain") {
  CHECK(tls::reduced_frequency(690e6, 0.010) ==
        doctest::Approx(static_cast<double>(oracle::tanh_argument(690e6L, 0.010L) / constants::pi)));
  CHECK_THROWS_AS(tls::shift_bracket(0.0), DomainError);
}

TEST_CASE("frequency shift anchoring and zero density") {
  CHECK(tls::tls_frequency_shift(7.53e-5, 690e6, 0.2, 0.2) == 0.0);
  for (double t : {0.01, 0.05, 0.3}) CHECK(tls::tls_frequency_shift(0.0, 690e6, t, 0.2) == 0.0);
  CHECK_THROWS_AS(tls::tls_frequency_shift(1e-5, 690e6, 0.0, 0.2), DomainError);
}

TEST_CASE("frequency shift against the independent evaluation") {
  const double s = tls::tls_frequency_shift(5.8e-6, 690e6, 0.010, 0.200);
  const double want = static_cast<double>(oracle::frequency_shift(5.8e-6, 690e6, 0.010, 0.200));
  CHECK(s < 0.0);
  CHECK(s == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("large-density sweep is a redshift of tens of kHz") {
  // The curve has a shallow minimum near 14.5 mK and is monotone above it.
  double prev = -1e300;
  for (double t = 0.010; t < 0.2; t += 0.005) {
    const double df = 690e6 * tls::tls_frequency_shift(7.53e-5, 690e6, t, 0.2);
    CHECK(df < 0.0);
    if (t >= 0.015) {
      CHECK(df > prev);
      prev = df;
    }
    CHECK(df == doctest::Approx(690e6 * static_cast<double>(oracle::frequency_shift(7.53e-5, 690e6, t, 0.2)))
                    .epsilon(1e-9));
  }
  const double lowest = 690e6 * tls::tls_frequency_shift(7.53e-5, 690e6, 0.010, 0.2);
  CHECK(lowest < -1e4);
  CHECK(lowest > -1e5);
}

TEST_CASE("temperature-sweep fit: noiseless recovery is exact") {
  const auto temps = synth::linear_grid(0.010, 0.200, 20);
  const auto s = synth::synth_temperature_sweep(7.53e-5, 690e6, temps, 0.0, 1);
  const auto r = tls::fit_fdelta(s);
  CHECK(std::abs(r.f_delta_tls / 7.53e-5 - 1.0) < 1e-12);
  CHECK(r.f0_hz == 690e6);
  CHECK_FALSE(r.nonpositive_warning);
}

TEST_CASE("temperature-sweep fit: 10 Hz noise on the smallest density") {
  const auto temps = synth::linear_grid(0.010, 0.200, 20);
  const auto r = tls::fit_fdelta(synth::synth_temperature_sweep(5.8e-6, 690e6, temps, 10.0, 4));
  CHECK(r.f_delta_tls == doctest::Approx(5.8e-6).epsilon(0.05));
  CHECK(r.f_delta_err > 0.0);
}

TEST_CASE("temperature-sweep fit: no shift is consistent with zero") {
  const auto temps = synth::linear_grid(0.010, 0.200, 20);
  const auto s = synth::synth_temperature_sweep(0.0, 690e6, temps, 0.0, 1);
  for (const auto& p : s.points()) CHECK(p.f0_hz == 690e6);
  const auto r = tls::fit_fdelta(s);
  CHECK(r.f_delta_tls == 0.0);
  const auto noisy = tls::fit_fdelta(synth::synth_temperature_sweep(0.0, 690e6, temps, 10.0, 2));
  CHECK(std::abs(noisy.f_delta_tls) < 3.0 * noisy.f_delta_err);
}

TEST_CASE("Q_TLS") {
  const double q = tls::q_tls(5.8e-6, 690e6, 0.010);
  CHECK(q == doctest::Approx(1.86e5).epsilon(0.01));
  CHECK(q >= 1e4);
  CHECK(q <= 3e5);
  CHECK(tls::q_tls(5.8e-6, 690e6, 1e-6) == doctest::Approx(1.0 / 5.8e-6));
  CHECK(tls::q_tls(2 * 5.8e-6, 690e6, 0.010) == doctest::Approx(q / 2.0));
}

namespace {

tls::PowerModelParams saturable_device() {
  tls::PowerModelParams p;
  p.f_delta_tls = 5.66e-4;
  p.q_i_res = 2.6e3;
  p.n_c = 1e3;
  p.beta = 1.0;
  p.temperature_K = 0.010;
  p.f0_hz = 690e6;
  return p;
}

}  // namespace

TEST_CASE("power model limits") {
  const auto p = saturable_device();
  const double th = std::tanh(static_cast<double>(oracle::tanh_argument(690e6L, 0.010L)));
  CHECK(tls::qi_power_model(p, 0.0) == doctest::Approx(1.0 / (p.f_delta_tls * th + 1.0 / p.q_i_res)));
  CHECK(tls::qi_power_model(p, 1e15) == doctest::Approx(p.q_i_res).epsilon(1e-5));
}

TEST_CASE("power model at device conditions rises with power, by at most the unsaturated gap") {
  const auto p = saturable_device();
  const double th = std::tanh(static_cast<double>(oracle::tanh_argument(690e6L, 0.010L)));
  const double max_rise = p.f_delta_tls * th * p.q_i_res;  // Q_res / Q(0) - 1
  double prev = 0.0;
  for (double n : synth::log_grid(1.0, 2.8e7, 30)) {
    const double q = tls::qi_power_model(p, n);
    CHECK(q > prev);
    prev = q;
  }
  const double rise = tls::qi_power_model(p, 2.8e7) / tls::qi_power_model(p, 1.0) - 1.0;
  CHECK(rise < max_rise);
  CHECK(0.301 < max_rise);  // a 30.1 % rise is reachable at these F delta and Q_res
}

TEST_CASE("power model validation") {
  auto p = saturable_device();
  p.n_c = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = saturable_device();
  p.q_i_res = -1.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("power-sweep fit: noiseless with free beta recovers all parameters") {
  auto p = saturable_device();
  p.beta = 0.8;
  const auto n = synth::log_grid(1e-1, 1e8, 40);
  const auto r = tls::fit_power_sweep(synth::synth_power_sweep(p, n, 0.0, 1));
  CHECK_FALSE(r.beta_fixed);
  CHECK(r.params.f_delta_tls == doctest::Approx(p.f_delta_tls).epsilon(0.01));
  CHECK(r.params.n_c == doctest::Approx(p.n_c).epsilon(0.01));
  CHECK(r.params.beta == doctest::Approx(p.beta).epsilon(0.01));
  CHECK(r.params.q_i_res == doctest::Approx(p.q_i_res).epsilon(0.01));
}

TEST_CASE("power-sweep fit: 2 percent noise") {
  const auto n = synth::log_grid(1.0, 2.8e7, 30);
  const auto r = tls::fit_power_sweep(synth::synth_power_sweep(saturable_device(), n, 0.02, 9));
  CHECK(r.params.f_delta_tls == doctest::Approx(5.66e-4).epsilon(0.10));
}

TEST_CASE("power-sweep fit: narrow sweep holds beta") {
  const auto n = synth::log_grid(10.0, 1e4, 12);
  const auto r = tls::fit_power_sweep(synth::synth_power_sweep(saturable_device(), n, 0.0, 1));
  CHECK(r.beta_fixed);
  CHECK(r.params.beta == tls::default_fixed_beta);
}

TEST_CASE("power-sweep fit: constant Q means no TLS loss") {
  std::vector<PowerPoint> pts;
  for (double n : synth::log_grid(1.0, 1e7, 20)) pts.push_back({n, 4000.0, 0.0});
  const auto r = tls::fit_power_sweep(PowerSweepSeries(pts, 0.01, 690e6));
  CHECK(r.params.q_i_res == doctest::Approx(4000.0).epsilon(1e-3));
  CHECK(r.params.f_delta_tls < 1e-6);
}
