#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sawkit/kernels.hpp"

namespace sawkit::kernels {

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace omp {

void s11_grid(const resonance::ResonanceModelParams& p, std::span<const double> freq_hz,
              std::span<Complex> out) {
  const auto n = static_cast<std::ptrdiff_t>(freq_hz.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = resonance::eval_s11(p, freq_hz[i]);
}

void s11_difference_columns(const resonance::ResonanceModelParams& base,
                            std::span<const resonance::ResonanceModelParams> plus,
                            std::span<const resonance::ResonanceModelParams> minus,
                            std::span<const double> denom, std::span<const double> freq_hz,
                            Eigen::Ref<Eigen::MatrixXd> jac) {
  const auto n = static_cast<std::ptrdiff_t>(freq_hz.size());
  const std::size_t ncol = plus.size();
  // Columns that leave the cable delay alone can share the base phasor.
  std::vector<char> same_tau_p(ncol), same_tau_m(ncol);
  for (std::size_t k = 0; k < ncol; ++k) {
    same_tau_p[k] = plus[k].background.tau_s == base.background.tau_s;
    same_tau_m[k] = minus[k].background.tau_s == base.background.tau_s;
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double w = constants::two_pi * freq_hz[i];
    const Complex phasor = std::polar(1.0, base.background.tau_s * w);
    for (std::size_t k = 0; k < ncol; ++k) {
      const auto& pp = plus[k];
      const auto& pm = minus[k];
      const Complex ph_p = same_tau_p[k] ? phasor : std::polar(1.0, pp.background.tau_s * w);
      const Complex ph_m = same_tau_m[k] ? phasor : std::polar(1.0, pm.background.tau_s * w);
      const Complex sp = pp.background.a * ph_p * resonance::cavity_response(pp, freq_hz[i]);
      const Complex sm = pm.background.a * ph_m * resonance::cavity_response(pm, freq_hz[i]);
      const Complex d = (sp - sm) / denom[k];
      jac(i, static_cast<Eigen::Index>(k)) = d.real();
      jac(n + i, static_cast<Eigen::Index>(k)) = d.imag();
    }
  }
}

void band_sum(std::span<const xps::Band> bands, std::span<const double> energy_ev,
              std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(energy_ev.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (const auto& b : bands) s += xps::pseudo_voigt(b, energy_ev[i]);
    out[i] = s;
  }
}

void detrend_rows(std::span<const double> heights, std::size_t nx, std::size_t ny, int order,
                  std::span<double> out) {
  const auto rows = static_cast<std::ptrdiff_t>(ny);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t iy = 0; iy < rows; ++iy) {
    const auto off = static_cast<std::size_t>(iy) * nx;
    serial::detrend_rows(heights.subspan(off, nx), nx, 1, order, out.subspan(off, nx));
  }
}

double sum_squared_deviation(std::span<const double> v, double center) {
  const std::size_t nblocks = (v.size() + reduction_block - 1) / reduction_block;
  std::vector<double> partial(nblocks, 0.0);
  const auto nb = static_cast<std::ptrdiff_t>(nblocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t start = static_cast<std::size_t>(b) * reduction_block;
    const std::size_t end = std::min(v.size(), start + reduction_block);
    double s = 0.0;
    for (std::size_t i = start; i < end; ++i) {
      const double d = v[i] - center;
      s += d * d;
    }
    partial[static_cast<std::size_t>(b)] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

void histogram(std::span<const double> v, double lo, double width,
               std::span<std::uint64_t> counts) {
  std::fill(counts.begin(), counts.end(), 0);
  const std::size_t nchunks = std::max<std::size_t>(1, (v.size() + 65535) / 65536);
  const auto nc = static_cast<std::ptrdiff_t>(nchunks);
  std::vector<std::vector<std::uint64_t>> local(nchunks, std::vector<std::uint64_t>(counts.size()));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < nc; ++c) {
    const std::size_t start = static_cast<std::size_t>(c) * 65536;
    const std::size_t end = std::min(v.size(), start + 65536);
    if (start < end)
      serial::histogram(v.subspan(start, end - start), lo, width, local[static_cast<std::size_t>(c)]);
  }
  for (const auto& l : local)
    for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += l[k];
}

}  // namespace omp
}  // namespace sawkit::kernels
