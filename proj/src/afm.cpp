#include "sawkit/afm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "sawkit/error.hpp"
#include "sawkit/kernels.hpp"
#include "sawkit/lm.hpp"

namespace sawkit::afm {

AfmImage remove_line_tilt(const AfmImage& image, int order) {
  if (order < 0 || order > 2) throw DomainError("remove_line_tilt: order must be 0, 1 or 2");
  if (image.nx() < static_cast<std::size_t>(order) + 1)
    throw DomainError("remove_line_tilt: rows shorter than order + 1");
  std::vector<double> out(image.heights_m().size());
  kernels::active::detrend_rows(image.heights_m(), image.nx(), image.ny(), order, out);
  return image.with_heights(std::move(out));
}

double neighborhood_median(const AfmImage& image, Pixel p) {
  if (p.ix >= image.nx() || p.iy >= image.ny())
    throw DomainError("pixel (" + std::to_string(p.ix) + ", " + std::to_string(p.iy) +
                      ") outside the image");
  std::vector<double> v;
  v.reserve(9);
  const std::size_t x0 = p.ix == 0 ? 0 : p.ix - 1, x1 = std::min(p.ix + 1, image.nx() - 1);
  const std::size_t y0 = p.iy == 0 ? 0 : p.iy - 1, y1 = std::min(p.iy + 1, image.ny() - 1);
  for (std::size_t y = y0; y <= y1; ++y)
    for (std::size_t x = x0; x <= x1; ++x) v.push_back(image.at(x, y));
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

AfmImage three_point_level(const AfmImage& image, Pixel p1, Pixel p2, Pixel p3) {
  const double z1 = neighborhood_median(image, p1);
  const double z2 = neighborhood_median(image, p2);
  const double z3 = neighborhood_median(image, p3);
  // Plane in pixel units: z = z1 + bx (x - x1) + by (y - y1).
  auto d = [](std::size_t a, std::size_t b) { return static_cast<double>(a) - static_cast<double>(b); };
  const double ax = d(p2.ix, p1.ix), ay = d(p2.iy, p1.iy);
  const double bx = d(p3.ix, p1.ix), by = d(p3.iy, p1.iy);
  const double det = ax * by - ay * bx;
  if (det == 0.0) throw DomainError("three_point_level: reference pixels are collinear");
  const double dz2 = z2 - z1, dz3 = z3 - z1;
  const double sx = (dz2 * by - dz3 * ay) / det;
  const double sy = (ax * dz3 - bx * dz2) / det;

  std::vector<double> out(image.heights_m().begin(), image.heights_m().end());
  for (std::size_t iy = 0; iy < image.ny(); ++iy)
    for (std::size_t ix = 0; ix < image.nx(); ++ix)
      out[iy * image.nx() + ix] -= z1 + sx * d(ix, p1.ix) + sy * d(iy, p1.iy);
  return image.with_heights(std::move(out));
}

namespace {

double mean_of(std::span<const double> h) {
  double s = 0.0;
  for (double v : h) s += v;
  const double n = static_cast<double>(h.size());
  double m = s / n;
  // One correction pass; makes the mean of a constant image exact.
  double c = 0.0;
  for (double v : h) c += v - m;
  return m + c / n;
}

}  // namespace

double rms_roughness(const AfmImage& image) {
  auto h = image.heights_m();
  const double m = mean_of(h);
  return std::sqrt(kernels::active::sum_squared_deviation(h, m) / static_cast<double>(h.size()));
}

Histogram height_histogram(const AfmImage& image) {
  std::vector<double> v(image.heights_m().begin(), image.heights_m().end());
  const std::size_t n = v.size();
  auto quantile = [&](double q) {
    const auto k = static_cast<std::size_t>(q * static_cast<double>(n - 1));
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v[k];
  };
  const double iqr = quantile(0.75) - quantile(0.25);
  const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  const double lo = *lo_it, hi = *hi_it;

  Histogram hist;
  hist.bin_width_m = std::max(2.0 * iqr / std::cbrt(static_cast<double>(n)), min_bin_width_m);
  const double nbins_f = std::ceil((hi - lo) / hist.bin_width_m);
  if (nbins_f > 1e7) throw DomainError("height_histogram: height range too wide for binning");
  const auto nbins = std::max<std::size_t>(1, static_cast<std::size_t>(nbins_f));
  hist.lo_m = lo;
  hist.counts.assign(nbins, 0);
  kernels::active::histogram(image.heights_m(), lo, hist.bin_width_m, hist.counts);
  return hist;
}

namespace {

struct Mode {
  std::size_t index;
  double height;
};

std::vector<Mode> prominent_modes(const std::vector<double>& s) {
  const std::size_t n = s.size();
  const double top = *std::max_element(s.begin(), s.end());
  std::vector<Mode> modes;
  std::size_t i = 0;
  while (i < n) {
    // Plateau [i, j).
    std::size_t j = i + 1;
    while (j < n && s[j] == s[i]) ++j;
    const bool left_lower = i == 0 || s[i - 1] < s[i];
    const bool right_lower = j == n || s[j] < s[i];
    if (left_lower && right_lower && s[i] > 0.0) {
      const double h = s[i];
      double lmin = h, rmin = h;
      for (std::size_t k = i; k-- > 0 && s[k] <= h;) lmin = std::min(lmin, s[k]);
      for (std::size_t k = j; k < n && s[k] <= h; ++k) rmin = std::min(rmin, s[k]);
      // Edges count as dropping to zero.
      const bool left_edge = i == 0 || std::all_of(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i),
                                                   [h](double x) { return x <= h; });
      const bool right_edge = std::all_of(s.begin() + static_cast<std::ptrdiff_t>(j), s.end(),
                                          [h](double x) { return x <= h; });
      if (left_edge) lmin = std::min(lmin, 0.0);
      if (right_edge) rmin = std::min(rmin, 0.0);
      const double prominence = h - std::max(lmin, rmin);
      if (prominence >= std::max(3.0 * std::sqrt(h), 0.02 * top))
        modes.push_back({(i + j - 1) / 2, h});
    }
    i = j;
  }
  return modes;
}

}  // namespace

StepHeightResult fit_step_heights(const AfmImage& image) {
  StepHeightResult res;
  res.histogram = height_histogram(image);
  const auto& hist = res.histogram;
  const std::size_t nb = hist.counts.size();

  const std::size_t half = std::max<std::size_t>(2, nb / 50);
  std::vector<double> smooth(nb, 0.0);
  for (std::size_t k = 0; k < nb; ++k) {
    const std::size_t a = k >= half ? k - half : 0, b = std::min(nb - 1, k + half);
    double s = 0.0;
    for (std::size_t q = a; q <= b; ++q) s += static_cast<double>(hist.counts[q]);
    smooth[k] = s / static_cast<double>(2 * half + 1);
  }
  auto modes = prominent_modes(smooth);
  if (modes.size() < 3)
    throw DomainError("fit_step_heights: fewer than 3 resolvable modes (found " +
                      std::to_string(modes.size()) + ")");
  std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) { return a.height > b.height; });
  modes.resize(3);
  std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) { return a.index < b.index; });

  double cmax = 0.0;
  for (auto c : hist.counts) cmax = std::max(cmax, static_cast<double>(c));

  // x per Gaussian: [amplitude / cmax, center in bins, ln(sigma in bins)].
  Eigen::VectorXd x0(9);
  for (int k = 0; k < 3; ++k) {
    const double mu = static_cast<double>(modes[static_cast<std::size_t>(k)].index) + 0.5;
    double gap = static_cast<double>(nb);
    for (int q = 0; q < 3; ++q)
      if (q != k)
        gap = std::min(gap, std::abs(static_cast<double>(modes[static_cast<std::size_t>(q)].index) + 0.5 - mu));
    x0[3 * k] = modes[static_cast<std::size_t>(k)].height / cmax;
    x0[3 * k + 1] = mu;
    x0[3 * k + 2] = std::log(std::max(gap / 2.5, 0.5));
  }
  const double nbins = static_cast<double>(nb);
  auto residual = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r) {
    if (!x.allFinite()) return false;
    r.resize(static_cast<Eigen::Index>(nb));
    for (std::size_t q = 0; q < nb; ++q) {
      const double xc = static_cast<double>(q) + 0.5;
      double model = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double z = (xc - x[3 * k + 1]) / std::exp(x[3 * k + 2]);
        model += x[3 * k] * std::exp(-0.5 * z * z);
      }
      r[static_cast<Eigen::Index>(q)] = model - static_cast<double>(hist.counts[q]) / cmax;
    }
    return true;
  };
  auto project = [&](Eigen::VectorXd& x) {
    for (int k = 0; k < 3; ++k) {
      x[3 * k] = std::max(x[3 * k], 0.0);
      x[3 * k + 1] = std::clamp(x[3 * k + 1], 0.0, nbins);
      x[3 * k + 2] = std::clamp(x[3 * k + 2], std::log(0.25), std::log(nbins));
    }
  };
  lm::Options lo;
  lo.backend = lm::JacobianBackend::serial;
  const auto fit = lm::minimize(residual, x0, lo, project);
  if (!fit.converged) throw FitError("fit_step_heights: no convergence within 200 iterations");

  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int a, int b) { return fit.x[3 * a + 1] < fit.x[3 * b + 1]; });
  const double bw = hist.bin_width_m;
  for (int k : order) {
    res.amplitudes.push_back(fit.x[3 * k] * cmax);
    res.centers_m.push_back(hist.lo_m + fit.x[3 * k + 1] * bw);
    res.center_errors_m.push_back(std::sqrt(std::max(fit.covariance(3 * k + 1, 3 * k + 1), 0.0)) * bw);
    res.sigmas_m.push_back(std::exp(fit.x[3 * k + 2]) * bw);
  }
  for (std::size_t k = 0; k + 1 < 3; ++k) {
    res.step_heights_m.push_back(res.centers_m[k + 1] - res.centers_m[k]);
    res.step_errors_m.push_back(std::hypot(res.center_errors_m[k], res.center_errors_m[k + 1]));
  }
  res.mean_step_m = 0.5 * (res.centers_m[2] - res.centers_m[0]);
  const int a = 3 * order[0] + 1, b = 3 * order[2] + 1;
  const double var = fit.covariance(a, a) + fit.covariance(b, b) - 2.0 * fit.covariance(a, b);
  res.mean_step_err_m = 0.5 * std::sqrt(std::max(var, 0.0)) * bw;
  res.width_uncertainty_m = (res.sigmas_m[0] + res.sigmas_m[1] + res.sigmas_m[2]) / 3.0;
  res.n_iterations = fit.iterations;
  return res;
}

}  // namespace sawkit::afm
