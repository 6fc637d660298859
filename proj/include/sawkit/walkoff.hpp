#pragma once

#include <vector>

#include "sawkit/types.hpp"

namespace sawkit::walkoff {

/// Walk-off angle in degrees from transverse and longitudinal power flux,
/// atan((p_perp / a_perp) / (p_par / a_par)), in (-90, 90).
double walkoff_from_flux(double p_perp, double p_par, double a_perp, double a_par);

/// Moving average of width 2 * half_width + 1. Edges are padded by mirroring
/// about the half-sample point (x[-1] = x[0]), which keeps the curve mean.
WalkoffCurve smooth_curve(const WalkoffCurve& curve, int half_width);

struct ZeroCrossing {
  double theta_deg;
  double slope_deg_per_deg;
  double uncertainty_deg;
};

/// Sign changes between adjacent samples, refined by linear interpolation.
/// A sample exactly at zero counts when its neighbours have opposite signs.
std::vector<ZeroCrossing> find_zero_crossings(const WalkoffCurve& curve);

struct NearZeroMinimum {
  double theta_deg;
  double eta_deg;
};

inline constexpr double tangency_threshold_deg = 0.1;

/// Local minima of |eta| below the threshold that are not sign changes
/// (curves that touch zero without crossing it).
std::vector<NearZeroMinimum> find_near_zero_minima(const WalkoffCurve& curve,
                                                   double threshold_deg = tangency_threshold_deg);

}  // namespace sawkit::walkoff
