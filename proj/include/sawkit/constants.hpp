#pragma once

#include <numbers>

namespace sawkit::constants {

inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double k_B = 1.380649e-23;      // J / K
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;

/// Literature Nb 3d5/2 binding energy in LiNbO3 used for charge referencing.
inline constexpr double nb3d52_reference_ev = 207.3;

/// Nominal O1s band centers: metal oxide, C=O, C-O.
inline constexpr double o1s_metal_oxide_ev = 530.0;
inline constexpr double o1s_c_double_o_ev = 531.5;
inline constexpr double o1s_c_single_o_ev = 533.0;
/// Alternative Nb2O5 lattice-oxygen position quoted in the literature.
inline constexpr double o1s_nb2o5_alt_ev = 530.5;

/// Zero-walk-off drive directions reported for x-cut LiNbO3 (degrees from crystal Z).
/// Documentation only; they come from an FEM solve this toolkit does not perform.
inline constexpr double xcut_zero_walkoff_a_deg = -30.0;
inline constexpr double xcut_zero_walkoff_b_deg = 75.0;

}  // namespace sawkit::constants
