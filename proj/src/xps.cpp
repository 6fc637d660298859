#include "sawkit/xps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sawkit/constants.hpp"
#include "sawkit/error.hpp"
#include "sawkit/kernels.hpp"
#include "sawkit/lm.hpp"

namespace sawkit::xps {

SensitivityTable::SensitivityTable(std::map<std::string, double> factors)
    : factors_(std::move(factors)) {
  for (const auto& [line, f] : factors_)
    if (!(f > 0.0) || !std::isfinite(f))
      throw DomainError("sensitivity factor for " + line + " must be positive");
}

double SensitivityTable::factor(const std::string& line) const {
  auto it = factors_.find(line);
  if (it == factors_.end()) throw DomainError("no sensitivity factor for " + line);
  return it->second;
}

BandModel default_o1s_model() {
  auto band = [](std::string name, double center) {
    Band b;
    b.name = std::move(name);
    b.center_ev = center;
    b.mix = default_mix;
    b.center_min_ev = center - center_freedom_ev;
    b.center_max_ev = center + center_freedom_ev;
    return b;
  };
  return BandModel{{band("metal_oxide", constants::o1s_metal_oxide_ev),
                    band("c_double_o", constants::o1s_c_double_o_ev),
                    band("c_single_o", constants::o1s_c_single_o_ev)}};
}

double pseudo_voigt(const Band& band, double energy_ev) noexcept {
  const double d = energy_ev - band.center_ev;
  const double g = std::exp(-0.5 * d * d / (band.sigma_ev * band.sigma_ev)) /
                   (band.sigma_ev * std::sqrt(constants::two_pi));
  const double l = band.gamma_ev / (constants::pi * (d * d + band.gamma_ev * band.gamma_ev));
  return band.amplitude * (band.mix * l + (1.0 - band.mix) * g);
}

ChargeShiftResult charge_shift(const std::vector<XpsSpectrum>& spectra,
                               std::optional<double> measured_nb3d52_ev) {
  ChargeShiftResult out;
  if (measured_nb3d52_ev) {
    out.measured_nb3d52_ev = *measured_nb3d52_ev;
  } else {
    auto nb = std::find_if(spectra.begin(), spectra.end(),
                           [](const XpsSpectrum& s) { return s.line().kind == LineKind::Nb3d; });
    if (nb == spectra.end()) throw DomainError("charge_shift: no Nb3d spectrum available");
    auto c = nb->counts();
    const auto imax = static_cast<std::size_t>(std::max_element(c.begin(), c.end()) - c.begin());
    out.measured_nb3d52_ev = nb->binding_energy_ev()[imax];
  }
  out.shift_ev = constants::nb3d52_reference_ev - out.measured_nb3d52_ev;
  out.spectra.reserve(spectra.size());
  for (const auto& s : spectra) {
    std::vector<double> be(s.binding_energy_ev().begin(), s.binding_energy_ev().end());
    for (double& e : be) e += out.shift_ev;
    out.spectra.emplace_back(std::move(be),
                             std::vector<double>(s.counts().begin(), s.counts().end()), s.line());
  }
  return out;
}

double ShirleyResult::net_area() const {
  double a = 0.0;
  for (std::size_t i = 1; i < energy_ev.size(); ++i) {
    const double y0 = counts[i - 1] - background[i - 1];
    const double y1 = counts[i] - background[i];
    a += 0.5 * (y0 + y1) * (energy_ev[i] - energy_ev[i - 1]);
  }
  return a;
}

ShirleyResult shirley_background(const XpsSpectrum& spectrum, std::optional<Window> window,
                                 const ShirleyOptions& options) {
  std::vector<double> e(spectrum.binding_energy_ev().begin(), spectrum.binding_energy_ev().end());
  std::vector<double> c(spectrum.counts().begin(), spectrum.counts().end());
  if (!spectrum.ascending()) {
    std::reverse(e.begin(), e.end());
    std::reverse(c.begin(), c.end());
  }

  ShirleyResult res;
  if (window) {
    const double lo = std::min(window->lo_ev, window->hi_ev);
    const double hi = std::max(window->lo_ev, window->hi_ev);
    if (lo < e.front() || hi > e.back())
      throw DomainError("shirley_background: window extends beyond the spectrum");
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] >= lo && e[i] <= hi) {
        res.energy_ev.push_back(e[i]);
        res.counts.push_back(c[i]);
      }
  } else {
    res.energy_ev = std::move(e);
    res.counts = std::move(c);
  }
  const std::size_t n = res.counts.size();
  if (n < 5) throw DomainError("shirley_background: window narrower than 5 points");

  const auto& y = res.counts;
  const double i_lo = (y[0] + y[1] + y[2]) / 3.0;
  const double i_hi = (y[n - 1] + y[n - 2] + y[n - 3]) / 3.0;
  const double step = i_hi - i_lo;
  const double threshold = options.tol * (std::abs(step) + 1e-12);

  std::vector<double> b(n, i_lo), next(n), cum(n);
  bool converged = false;
  int it = 0;
  while (it < options.max_iter) {
    ++it;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += y[i] - b[i];
      cum[i] = acc;
    }
    const double total = cum[n - 1];
    if (!(total > 0.0)) {
      converged = true;
      break;
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = i_lo + step * cum[i] / total;
      change = std::max(change, std::abs(next[i] - b[i]));
    }
    b.swap(next);
    if (change < threshold) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw FitError("shirley_background: no convergence in " + std::to_string(options.max_iter) +
                   " iterations");
  for (std::size_t i = 0; i < n; ++i) b[i] = std::min(b[i], y[i]);
  res.background = std::move(b);
  res.iterations = it;
  return res;
}

namespace {

// Per band: [amplitude / area_scale, center, ln sigma, ln gamma].
constexpr int kPerBand = 4;

double peak_height_per_area(const Band& b) {
  Band unit = b;
  unit.amplitude = 1.0;
  unit.center_ev = 0.0;
  return pseudo_voigt(unit, 0.0);
}

}  // namespace

BandFitResult fit_bands(std::span<const double> energy_ev, std::span<const double> signal,
                        const BandModel& model) {
  const std::size_t m = energy_ev.size();
  if (m != signal.size()) throw DomainError("fit_bands: energy and signal lengths differ");
  const std::size_t nb = model.bands.size();
  if (nb == 0) throw DomainError("fit_bands: empty band model");
  if (m < kPerBand * nb + 1) throw DomainError("fit_bands: too few samples for the band model");

  const auto [emin_it, emax_it] = std::minmax_element(energy_ev.begin(), energy_ev.end());
  const double span = *emax_it - *emin_it;
  double grid_step = span;
  for (std::size_t i = 1; i < m; ++i)
    grid_step = std::min(grid_step, std::abs(energy_ev[i] - energy_ev[i - 1]));

  double area = 0.0;
  for (std::size_t i = 1; i < m; ++i)
    area += 0.5 * (signal[i] + signal[i - 1]) * std::abs(energy_ev[i] - energy_ev[i - 1]);
  const double peak = *std::max_element(signal.begin(), signal.end());
  const double scale = area > 0.0 ? area : std::max(peak * span, 1.0);

  std::vector<Band> bands = model.bands;
  for (auto& b : bands) {
    if (!(b.sigma_ev > 0.0) || !(b.gamma_ev > 0.0))
      throw DomainError("fit_bands: band widths must be positive");
    if (b.mix < 0.0 || b.mix > 1.0) throw DomainError("fit_bands: mix must lie in [0, 1]");
    if (b.center_min_ev >= b.center_max_ev) {
      b.center_min_ev = b.center_ev - center_freedom_ev;
      b.center_max_ev = b.center_ev + center_freedom_ev;
    }
  }

  const double ln_w_lo = std::log(0.5 * grid_step);
  const double ln_w_hi = std::log(span);
  Eigen::VectorXd x0(static_cast<Eigen::Index>(kPerBand * nb));
  for (std::size_t k = 0; k < nb; ++k) {
    const auto& b = bands[k];
    double amp = b.amplitude;
    if (!(amp > 0.0)) {
      // Seed from the signal height nearest the nominal center.
      std::size_t best = 0;
      for (std::size_t i = 1; i < m; ++i)
        if (std::abs(energy_ev[i] - b.center_ev) < std::abs(energy_ev[best] - b.center_ev))
          best = i;
      amp = std::max(signal[best], 0.01 * peak) / peak_height_per_area(b) / static_cast<double>(nb);
    }
    const auto o = static_cast<Eigen::Index>(kPerBand * k);
    x0[o] = amp / scale;
    x0[o + 1] = std::clamp(b.center_ev, b.center_min_ev, b.center_max_ev);
    x0[o + 2] = std::clamp(std::log(b.sigma_ev), ln_w_lo, ln_w_hi);
    x0[o + 3] = std::clamp(std::log(b.gamma_ev), ln_w_lo, ln_w_hi);
  }

  auto unpack = [&](const Eigen::VectorXd& x, std::vector<Band>& out) {
    out = bands;
    for (std::size_t k = 0; k < nb; ++k) {
      const auto o = static_cast<Eigen::Index>(kPerBand * k);
      out[k].amplitude = x[o] * scale;
      out[k].center_ev = x[o + 1];
      out[k].sigma_ev = std::exp(x[o + 2]);
      out[k].gamma_ev = std::exp(x[o + 3]);
    }
  };
  auto residual = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r) {
    if (!x.allFinite()) return false;
    std::vector<Band> trial;
    unpack(x, trial);
    std::vector<double> model_values(m);
    kernels::active::band_sum(trial, energy_ev, model_values);
    r.resize(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i)
      r[static_cast<Eigen::Index>(i)] = (model_values[i] - signal[i]) / scale;
    return true;
  };
  auto project = [&](Eigen::VectorXd& x) {
    for (std::size_t k = 0; k < nb; ++k) {
      const auto o = static_cast<Eigen::Index>(kPerBand * k);
      x[o] = std::max(x[o], 0.0);
      x[o + 1] = std::clamp(x[o + 1], bands[k].center_min_ev, bands[k].center_max_ev);
      x[o + 2] = std::clamp(x[o + 2], ln_w_lo, ln_w_hi);
      x[o + 3] = std::clamp(x[o + 3], ln_w_lo, ln_w_hi);
    }
  };

  lm::Options lo;
  lo.backend = lm::JacobianBackend::serial;
  // Amplitudes and centers first with the widths held at their seeds, so a
  // weak band is placed before a strong neighbour can widen over it.
  auto hold_widths = [&](Eigen::VectorXd& x) {
    project(x);
    for (std::size_t k = 0; k < nb; ++k) {
      const auto o = static_cast<Eigen::Index>(kPerBand * k);
      x[o + 2] = x0[o + 2];
      x[o + 3] = x0[o + 3];
    }
  };
  const auto placed = lm::minimize(residual, x0, lo, hold_widths);
  const auto fit = lm::minimize(residual, placed.x, lo, project);
  if (!fit.converged) throw FitError("fit_bands: no convergence within 200 iterations");

  BandFitResult res;
  unpack(fit.x, res.model.bands);
  res.n_iterations = fit.iterations;
  res.residual_rms = std::sqrt(fit.cost / static_cast<double>(m)) * scale;

  double total = 0.0;
  for (const auto& b : res.model.bands) total += b.amplitude;
  for (const auto& b : res.model.bands)
    if (b.amplitude > 1e-3 * total && std::max(b.sigma_ev, b.gamma_ev) < grid_step)
      throw FitError("fit_bands: band " + b.name + " collapsed below the grid step");

  const auto n = static_cast<Eigen::Index>(nb);
  res.area_covariance.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      res.area_covariance(a, b) = fit.covariance(kPerBand * a, kPerBand * b) * scale * scale;
  for (std::size_t k = 0; k < nb; ++k) {
    res.areas.push_back(res.model.bands[k].amplitude);
    res.area_errors.push_back(
        std::sqrt(std::max(res.area_covariance(static_cast<Eigen::Index>(k),
                                               static_cast<Eigen::Index>(k)),
                           0.0)));
  }
  // Unidentified splits show up as area errors larger than the total signal
  // or as near-perfect anticorrelation between two bands.
  for (Eigen::Index a = 0; a < n && !res.degenerate; ++a) {
    if (res.area_errors[static_cast<std::size_t>(a)] > std::max(total, area)) res.degenerate = true;
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const double den = std::sqrt(res.area_covariance(a, a) * res.area_covariance(b, b));
      if (den > 0.0 && res.area_covariance(a, b) / den < -0.99) res.degenerate = true;
    }
  }
  return res;
}

XpsQuantReport atomic_percentages(const std::map<std::string, double>& areas,
                                  const SensitivityTable& table, bool with_ratios) {
  if (areas.empty()) throw DomainError("atomic_percentages: no areas given");
  std::map<std::string, double> weight;
  double sum = 0.0;
  for (const auto& [line, a] : areas) {
    if (!(a >= 0.0) || !std::isfinite(a))
      throw DomainError("atomic_percentages: area for " + line + " must be non-negative");
    const double w = a / table.factor(line);
    weight[line] = w;
    sum += w;
  }
  if (!(sum > 0.0)) throw DomainError("atomic_percentages: all areas are zero");

  XpsQuantReport rep;
  for (const auto& [line, w] : weight) rep.atomic_percent[line] = w / sum * 100.0;

  if (with_ratios) {
    const std::string nb = ElementLine{LineKind::Nb3d, {}}.name();
    auto it = rep.atomic_percent.find(nb);
    if (it == rep.atomic_percent.end() || !(it->second > 0.0))
      throw DomainError("atomic_percentages: ratios need a nonzero Nb3d area");
    for (auto [kind, key] : {std::pair{LineKind::O1s, "O/Nb"}, std::pair{LineKind::C1s, "C/Nb"},
                             std::pair{LineKind::Li1s, "Li/Nb"}}) {
      auto jt = rep.atomic_percent.find(ElementLine{kind, {}}.name());
      if (jt != rep.atomic_percent.end()) rep.ratios_to_nb[key] = jt->second / it->second;
    }
  }
  return rep;
}

}  // namespace sawkit::xps
