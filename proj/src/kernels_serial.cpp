#include <algorithm>
#include <cmath>
#include <limits>

#include "sawkit/kernels.hpp"

namespace sawkit::kernels::serial {

void s11_grid(const resonance::ResonanceModelParams& p, std::span<const double> freq_hz,
              std::span<Complex> out) {
  for (std::size_t i = 0; i < freq_hz.size(); ++i) out[i] = resonance::eval_s11(p, freq_hz[i]);
}

void s11_difference_columns(const resonance::ResonanceModelParams& /*base*/,
                            std::span<const resonance::ResonanceModelParams> plus,
                            std::span<const resonance::ResonanceModelParams> minus,
                            std::span<const double> denom, std::span<const double> freq_hz,
                            Eigen::Ref<Eigen::MatrixXd> jac) {
  const auto n = static_cast<Eigen::Index>(freq_hz.size());
  for (std::size_t k = 0; k < plus.size(); ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Complex d = (resonance::eval_s11(plus[k], freq_hz[i]) -
                         resonance::eval_s11(minus[k], freq_hz[i])) /
                        denom[k];
      jac(i, static_cast<Eigen::Index>(k)) = d.real();
      jac(n + i, static_cast<Eigen::Index>(k)) = d.imag();
    }
  }
}

void band_sum(std::span<const xps::Band> bands, std::span<const double> energy_ev,
              std::span<double> out) {
  for (std::size_t i = 0; i < energy_ev.size(); ++i) {
    double s = 0.0;
    for (const auto& b : bands) s += xps::pseudo_voigt(b, energy_ev[i]);
    out[i] = s;
  }
}

void detrend_rows(std::span<const double> heights, std::size_t nx, std::size_t ny, int order,
                  std::span<double> out) {
  // Discrete orthogonal polynomials on x = 0..nx-1.
  const double n = static_cast<double>(nx);
  const double xm = (n - 1.0) / 2.0;
  const double c2 = (n * n - 1.0) / 12.0;  // mean of (x - xm)^2
  for (std::size_t iy = 0; iy < ny; ++iy) {
    const double* row = heights.data() + iy * nx;
    double* dst = out.data() + iy * nx;
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, n1 = 0.0, n2 = 0.0, ss = 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double u = static_cast<double>(ix) - xm;
      const double p2 = u * u - c2;
      ss += row[ix] * row[ix];
      s0 += row[ix];
      s1 += row[ix] * u;
      s2 += row[ix] * p2;
      n1 += u * u;
      n2 += p2 * p2;
    }
    // Components below sqrt(eps) of the row norm are dropped. What a previous
    // pass leaves behind is rounding from the undetrended row, which can be far
    // larger than rounding of this one, so the cutoff needs that headroom.
    const double tiny = std::sqrt(std::numeric_limits<double>::epsilon()) * std::sqrt(ss);
    auto coef = [tiny](double s, double norm2) {
      const double b = s / norm2;
      return std::abs(b) * std::sqrt(norm2) <= tiny ? 0.0 : b;
    };
    // Mean with one correction pass, exact for a constant row.
    double b0 = s0 / n;
    double c0 = 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix) c0 += row[ix] - b0;
    b0 += c0 / n;
    if (std::abs(b0) * std::sqrt(n) <= tiny) b0 = 0.0;
    const double b1 = order >= 1 && n1 > 0.0 ? coef(s1, n1) : 0.0;
    const double b2 = order >= 2 && n2 > 0.0 ? coef(s2, n2) : 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double u = static_cast<double>(ix) - xm;
      dst[ix] = row[ix] - (b0 + b1 * u + b2 * (u * u - c2));
    }
  }
}

double sum_squared_deviation(std::span<const double> v, double center) {
  double total = 0.0;
  for (std::size_t start = 0; start < v.size(); start += reduction_block) {
    const std::size_t end = std::min(v.size(), start + reduction_block);
    double block = 0.0;
    for (std::size_t i = start; i < end; ++i) {
      const double d = v[i] - center;
      block += d * d;
    }
    total += block;
  }
  return total;
}

void histogram(std::span<const double> v, double lo, double width,
               std::span<std::uint64_t> counts) {
  std::fill(counts.begin(), counts.end(), 0);
  const auto nb = counts.size();
  for (double x : v) {
    const double t = (x - lo) / width;
    if (!(t >= 0.0)) continue;
    auto k = static_cast<std::size_t>(std::floor(t));
    if (k >= nb) {
      if (t <= static_cast<double>(nb)) k = nb - 1;
      else continue;
    }
    ++counts[k];
  }
}

}  // namespace sawkit::kernels::serial
