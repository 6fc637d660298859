#include "sawkit/walkoff.hpp"

#include <cmath>
#include <numbers>

#include "sawkit/error.hpp"

namespace sawkit::walkoff {

double walkoff_from_flux(double p_perp, double p_par, double a_perp, double a_par) {
  if (!(a_perp > 0.0) || !(a_par > 0.0))
    throw DomainError("walkoff_from_flux: aperture factors must be positive");
  if (p_par == 0.0)
    throw DomainError("walkoff_from_flux: no longitudinal flux, walk-off at the +-90 degree boundary");
  const double ratio = (p_perp / a_perp) / (p_par / a_par);
  return std::atan(ratio) * (180.0 / std::numbers::pi);
}

WalkoffCurve smooth_curve(const WalkoffCurve& curve, int half_width) {
  const auto n = static_cast<long>(curve.size());
  if (half_width < 1) throw DomainError("smooth_curve: half_width must be >= 1");
  if (2L * half_width >= n) throw DomainError("smooth_curve: half_width must be < length / 2");
  auto eta = curve.eta_deg();
  auto at = [&](long i) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - i - 1;
    return eta[static_cast<std::size_t>(i)];
  };
  std::vector<double> out(static_cast<std::size_t>(n));
  const double width = 2.0 * half_width + 1.0;
  for (long i = 0; i < n; ++i) {
    double s = 0.0;
    for (long k = -half_width; k <= half_width; ++k) s += at(i + k);
    out[static_cast<std::size_t>(i)] = s / width;
  }
  return WalkoffCurve({curve.theta_deg().begin(), curve.theta_deg().end()}, std::move(out));
}

std::vector<ZeroCrossing> find_zero_crossings(const WalkoffCurve& curve) {
  auto th = curve.theta_deg();
  auto eta = curve.eta_deg();
  const std::size_t n = curve.size();
  std::vector<ZeroCrossing> out;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = eta[i], b = eta[i + 1];
    const double dt = th[i + 1] - th[i];
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
      const double t = a / (a - b);
      out.push_back({th[i] + t * dt, (b - a) / dt, 0.5 * dt});
    } else if (b == 0.0 && i + 2 < n) {
      const double c = eta[i + 2];
      if ((a < 0.0 && c > 0.0) || (a > 0.0 && c < 0.0)) {
        const double span = th[i + 2] - th[i];
        out.push_back({th[i + 1], (c - a) / span, 0.25 * span});
      }
    }
  }
  return out;
}

std::vector<NearZeroMinimum> find_near_zero_minima(const WalkoffCurve& curve, double threshold_deg) {
  auto th = curve.theta_deg();
  auto eta = curve.eta_deg();
  const std::size_t n = curve.size();
  std::vector<NearZeroMinimum> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = std::abs(eta[i]);
    if (m >= threshold_deg) continue;
    const bool left = i == 0 || std::abs(eta[i - 1]) > m;
    const bool right = i + 1 == n || std::abs(eta[i + 1]) >= m;
    if (!left || !right) continue;
    // Skip samples next to a sign change; those are crossings.
    const double lo = i == 0 ? eta[i] : eta[i - 1];
    const double hi = i + 1 == n ? eta[i] : eta[i + 1];
    const bool crossing = (lo < 0.0 && hi > 0.0) || (lo > 0.0 && hi < 0.0) ||
                          (eta[i] != 0.0 && (lo * eta[i] < 0.0 || hi * eta[i] < 0.0));
    if (!crossing) out.push_back({th[i], eta[i]});
  }
  return out;
}

}  // namespace sawkit::walkoff
