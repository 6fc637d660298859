#pragma once

// Data-parallel inner loops. Each kernel exists twice with identical
// signatures: `serial` is the reference, `omp` the OpenMP version. Results
// are bitwise identical between the two for every thread count: parallel
// loops only write independent outputs and every floating-point reduction is
// combined in a fixed order.

#include <Eigen/Dense>
#include <cstdint>
#include <span>

#include "sawkit/resonance.hpp"
#include "sawkit/xps.hpp"

namespace sawkit::kernels {

#define SAWKIT_KERNEL_DECLS                                                                       \
  /* S11 model on a frequency grid. */                                                            \
  void s11_grid(const resonance::ResonanceModelParams& p, std::span<const double> freq_hz,        \
                std::span<Complex> out);                                                          \
  /* Central differences (S(plus_k) - S(minus_k)) / denom_k per column; rows are Re then Im. */   \
  void s11_difference_columns(const resonance::ResonanceModelParams& base,                        \
                              std::span<const resonance::ResonanceModelParams> plus,              \
                              std::span<const resonance::ResonanceModelParams> minus,             \
                              std::span<const double> denom, std::span<const double> freq_hz,     \
                              Eigen::Ref<Eigen::MatrixXd> jac);                                   \
  /* Sum of pseudo-Voigt bands on an energy grid. */                                              \
  void band_sum(std::span<const xps::Band> bands, std::span<const double> energy_ev,              \
                std::span<double> out);                                                           \
  /* Per-row least-squares polynomial removal along the fast axis (order 0..2). */                \
  void detrend_rows(std::span<const double> heights, std::size_t nx, std::size_t ny, int order,   \
                    std::span<double> out);                                                       \
  /* sum (v - center)^2, accumulated in fixed 4096-element blocks. */                             \
  double sum_squared_deviation(std::span<const double> v, double center);                         \
  /* Counts per bin [lo + k w, lo + (k+1) w); the last bin also takes its upper edge. */          \
  void histogram(std::span<const double> v, double lo, double width,                              \
                 std::span<std::uint64_t> counts);

namespace serial {
SAWKIT_KERNEL_DECLS
}
namespace omp {
SAWKIT_KERNEL_DECLS
}

#undef SAWKIT_KERNEL_DECLS

/// Threads the omp kernels will use (1 when built without OpenMP).
int max_threads() noexcept;

#ifdef SAWKIT_HAVE_OPENMP
namespace active = omp;
#else
namespace active = serial;
#endif

inline constexpr std::size_t reduction_block = 4096;

}  // namespace sawkit::kernels
