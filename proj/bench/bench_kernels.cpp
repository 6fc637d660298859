// Serial reference kernels against their OpenMP versions on typical sizes.

#include <benchmark/benchmark.h>

#include <random>

#include "sawkit/kernels.hpp"
#include "sawkit/synth.hpp"

namespace {

using namespace sawkit;

resonance::ResonanceModelParams mode() {
  resonance::ResonanceModelParams p;
  p.f0_hz = 688.4e6;
  p.kappa_hz = constants::two_pi * 150e3;
  p.kappa_e_hz = constants::two_pi * 50e3;
  p.dark = resonance::DarkMode{688.475e6, constants::two_pi * 20e3, constants::two_pi * 30e3};
  return p;
}

std::vector<double> heights(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> d(0.0, 1e-10);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

template <auto Kernel>
void s11_grid(benchmark::State& state) {
  const auto f = synth::linear_grid(688e6, 689e6, static_cast<std::size_t>(state.range(0)));
  std::vector<Complex> out(f.size());
  for (auto _ : state) {
    Kernel(mode(), f, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void s11_columns(benchmark::State& state) {
  const auto f = synth::linear_grid(688e6, 689e6, static_cast<std::size_t>(state.range(0)));
  const auto base = mode();
  std::vector<resonance::ResonanceModelParams> plus(9, base), minus(9, base);
  for (std::size_t k = 0; k < 9; ++k) {
    plus[k].f0_hz += 1.0 + k;
    minus[k].f0_hz -= 1.0 + k;
  }
  const std::vector<double> denom(9, 2.0);
  Eigen::MatrixXd jac(2 * f.size(), 9);
  for (auto _ : state) {
    Kernel(base, plus, minus, denom, f, jac);
    benchmark::DoNotOptimize(jac.data());
  }
}

template <auto Kernel>
void band_sum(benchmark::State& state) {
  const auto e = synth::linear_grid(520.0, 540.0, static_cast<std::size_t>(state.range(0)));
  auto m = xps::default_o1s_model();
  for (auto& b : m.bands) b.amplitude = 1.0;
  std::vector<double> out(e.size());
  for (auto _ : state) {
    Kernel(m.bands, e, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <auto Kernel>
void detrend(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = heights(n * n);
  std::vector<double> out(h.size());
  for (auto _ : state) {
    Kernel(h, n, n, 1, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

template <auto Kernel>
void sum_sq(benchmark::State& state) {
  const auto h = heights(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(h, 0.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void histogram(benchmark::State& state) {
  const auto h = heights(static_cast<std::size_t>(state.range(0)));
  std::vector<std::uint64_t> counts(256);
  for (auto _ : state) {
    Kernel(h, -6e-10, 12e-10 / 256, counts);
    benchmark::DoNotOptimize(counts.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(s11_grid<kernels::serial::s11_grid>)->Name("s11_grid/serial")->Arg(16001);
BENCHMARK(s11_grid<kernels::omp::s11_grid>)->Name("s11_grid/omp")->Arg(16001);
BENCHMARK(s11_columns<kernels::serial::s11_difference_columns>)->Name("s11_columns/serial")->Arg(16001);
BENCHMARK(s11_columns<kernels::omp::s11_difference_columns>)->Name("s11_columns/omp")->Arg(16001);
BENCHMARK(band_sum<kernels::serial::band_sum>)->Name("band_sum/serial")->Arg(2001);
BENCHMARK(band_sum<kernels::omp::band_sum>)->Name("band_sum/omp")->Arg(2001);
BENCHMARK(detrend<kernels::serial::detrend_rows>)->Name("detrend_rows/serial")->Arg(512);
BENCHMARK(detrend<kernels::omp::detrend_rows>)->Name("detrend_rows/omp")->Arg(512);
BENCHMARK(sum_sq<kernels::serial::sum_squared_deviation>)->Name("sum_squared_deviation/serial")->Arg(512 * 512);
BENCHMARK(sum_sq<kernels::omp::sum_squared_deviation>)->Name("sum_squared_deviation/omp")->Arg(512 * 512);
BENCHMARK(histogram<kernels::serial::histogram>)->Name("histogram/serial")->Arg(512 * 512);
BENCHMARK(histogram<kernels::omp::histogram>)->Name("histogram/omp")->Arg(512 * 512);

BENCHMARK_MAIN();
