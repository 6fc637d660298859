#pragma once

#include <cstdint>
#include <vector>

#include "sawkit/types.hpp"

namespace sawkit::afm {

/// Subtracts a least-squares polynomial of the given order (0, 1 or 2) from
/// every scan row along the fast (x) axis.
AfmImage remove_line_tilt(const AfmImage& image, int order = 1);

struct Pixel {
  std::size_t ix;
  std::size_t iy;
};

/// Subtracts the plane through the 3x3 median heights around three pixels.
/// Throws DomainError for collinear or out-of-range pixels.
AfmImage three_point_level(const AfmImage& image, Pixel p1, Pixel p2, Pixel p3);

/// 3x3 median around a pixel, clipped at the image border.
double neighborhood_median(const AfmImage& image, Pixel p);

/// sqrt(mean((h - mean h)^2)) over all pixels.
double rms_roughness(const AfmImage& image);

struct Histogram {
  double lo_m = 0.0;
  double bin_width_m = 0.0;
  std::vector<std::uint64_t> counts;

  double center(std::size_t k) const noexcept { return lo_m + (static_cast<double>(k) + 0.5) * bin_width_m; }
};

inline constexpr double min_bin_width_m = 10e-12;

/// Height histogram with Freedman-Diaconis bin width, floored at 10 pm.
Histogram height_histogram(const AfmImage& image);

struct StepHeightResult {
  std::vector<double> centers_m;  ///< ascending
  std::vector<double> center_errors_m;
  std::vector<double> sigmas_m;
  std::vector<double> amplitudes;  ///< peak counts per bin
  std::vector<double> step_heights_m;
  std::vector<double> step_errors_m;  ///< RSS of adjacent center errors
  double mean_step_m = 0.0;
  double mean_step_err_m = 0.0;
  /// Mean fitted Gaussian width, the width-based convention for step uncertainty.
  double width_uncertainty_m = 0.0;
  Histogram histogram;
  int n_iterations = 0;
};

/// Three-Gaussian fit to the height histogram, seeded at its three largest
/// prominent modes. Throws DomainError when fewer than three modes are
/// resolvable and FitError on non-convergence.
StepHeightResult fit_step_heights(const AfmImage& image);

}  // namespace sawkit::afm
