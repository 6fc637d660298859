#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sawkit/types.hpp"

namespace sawkit::xps {

/// Relative atomic sensitivity factor per element line. Factors are tool
/// specific and supplied by the user; see config/sensitivity_default.json.
class SensitivityTable {
 public:
  SensitivityTable() = default;
  explicit SensitivityTable(std::map<std::string, double> factors);

  double factor(const std::string& line) const;
  bool contains(const std::string& line) const { return factors_.count(line) != 0; }
  const std::map<std::string, double>& factors() const noexcept { return factors_; }

 private:
  std::map<std::string, double> factors_;
};

/// Area-normalized pseudo-Voigt: amplitude * (mix * L + (1 - mix) * G), where
/// G has standard deviation sigma_ev and L has half width at half maximum
/// gamma_ev. The band area is therefore `amplitude`.
struct Band {
  std::string name;
  double center_ev = 0.0;
  double sigma_ev = 0.5;
  double gamma_ev = 0.5;
  double mix = 0.3;
  double amplitude = 0.0;
  double center_min_ev = 0.0;
  double center_max_ev = 0.0;
};

struct BandModel {
  std::vector<Band> bands;
};

inline constexpr double default_mix = 0.3;
inline constexpr double center_freedom_ev = 0.5;

/// Three-band O1s model: metal oxide (530.0 eV), C=O (531.5 eV), C-O (533.0 eV).
BandModel default_o1s_model();

double pseudo_voigt(const Band& band, double energy_ev) noexcept;

struct ChargeShiftResult {
  double shift_ev = 0.0;
  double measured_nb3d52_ev = 0.0;
  std::vector<XpsSpectrum> spectra;
};

/// Translates every binding-energy axis by (207.3 - measured). The measured
/// Nb3d5/2 position is auto-detected from the Nb3d spectrum maximum when not
/// supplied. Throws DomainError when no Nb3d spectrum is present.
ChargeShiftResult charge_shift(const std::vector<XpsSpectrum>& spectra,
                               std::optional<double> measured_nb3d52_ev = std::nullopt);

struct Window {
  double lo_ev;
  double hi_ev;
};

struct ShirleyOptions {
  double tol = 1e-6;
  int max_iter = 50;
};

/// Window samples in ascending binding energy, with the converged background.
struct ShirleyResult {
  std::vector<double> energy_ev;
  std::vector<double> counts;
  std::vector<double> background;
  int iterations = 0;

  /// Trapezoidal integral of counts - background over the window.
  double net_area() const;
};

/// Iterative Shirley background. The endpoint levels are 3-point averages at
/// each end of the window; the background at E is
///   I_lo + (I_hi - I_lo) * A(E) / A_total,
/// where A(E) is the background-subtracted area from the low-BE end up to E.
/// The returned background is clipped to the data.
ShirleyResult shirley_background(const XpsSpectrum& spectrum, std::optional<Window> window = {},
                                 const ShirleyOptions& options = {});

struct BandFitResult {
  BandModel model;
  std::vector<double> areas;
  std::vector<double> area_errors;
  Eigen::MatrixXd area_covariance;
  bool degenerate = false;
  double residual_rms = 0.0;
  int n_iterations = 0;
};

/// Fits the bands to background-subtracted data. Centers stay within their
/// bounds, amplitudes stay non-negative. Throws FitError on non-convergence
/// or when a significant band collapses below the grid step.
BandFitResult fit_bands(std::span<const double> energy_ev, std::span<const double> signal,
                        const BandModel& model);

struct XpsQuantReport {
  std::map<std::string, double> atomic_percent;
  std::map<std::string, double> ratios_to_nb;
  std::map<std::string, std::map<std::string, double>> band_areas;
};

/// C_x = (A_x / F_x) / sum_i (A_i / F_i) * 100. Ratios O/Nb, C/Nb and Li/Nb
/// are filled for the lines present when `with_ratios` is set.
XpsQuantReport atomic_percentages(const std::map<std::string, double>& areas,
                                  const SensitivityTable& table, bool with_ratios = true);

}  // namespace sawkit::xps
