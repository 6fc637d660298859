#include "sawkit/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sawkit/error.hpp"

namespace sawkit {

namespace {

bool strictly_increasing(std::span<const double> v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

bool strictly_decreasing(std::span<const double> v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

ComplexSpectrum::ComplexSpectrum(std::vector<double> frequencies_hz, std::vector<Complex> values,
                                 Metadata meta)
    : freq_(std::move(frequencies_hz)), values_(std::move(values)), meta_(std::move(meta)) {
  if (freq_.size() != values_.size())
    throw DomainError("spectrum: " + std::to_string(values_.size()) + " values for " +
                      std::to_string(freq_.size()) + " frequencies");
  if (freq_.size() < min_length)
    throw DomainError("spectrum: need at least 8 samples, got " + std::to_string(freq_.size()));
  if (!all_finite(freq_)) throw DomainError("spectrum: non-finite frequency");
  if (!strictly_increasing(freq_)) throw DomainError("spectrum: frequencies not strictly increasing");
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("spectrum: non-finite S11 value");
}

TemperatureSweepSeries::TemperatureSweepSeries(std::vector<TemperaturePoint> points,
                                               double reference_temperature_K)
    : points_(std::move(points)), t_ref_(reference_temperature_K) {
  if (!(t_ref_ > 0.0) || t_ref_ > 1.0)
    throw DomainError("temperature sweep: reference temperature must lie in (0, 1] K");
  std::set<double> distinct;
  for (const auto& p : points_) {
    if (!(p.temperature_K > 0.0) || p.temperature_K > 1.0)
      throw DomainError("temperature sweep: temperature " + std::to_string(p.temperature_K) +
                        " K outside (0, 1] K");
    if (!(p.f0_hz > 0.0) || !std::isfinite(p.f0_hz))
      throw DomainError("temperature sweep: f0 must be positive and finite");
    if (!(p.f0_err_hz >= 0.0) || !std::isfinite(p.f0_err_hz))
      throw DomainError("temperature sweep: f0 error must be >= 0");
    distinct.insert(p.temperature_K);
  }
  if (distinct.size() < 4)
    throw DomainError("temperature sweep: need at least 4 distinct temperatures, got " +
                      std::to_string(distinct.size()));
}

PowerSweepSeries::PowerSweepSeries(std::vector<PowerPoint> points, double temperature_K,
                                   double f0_hz)
    : points_(std::move(points)), temperature_K_(temperature_K), f0_hz_(f0_hz) {
  if (!(temperature_K_ > 0.0)) throw DomainError("power sweep: temperature must be > 0");
  if (!(f0_hz_ > 0.0)) throw DomainError("power sweep: f0 must be > 0");
  if (points_.size() < 5)
    throw DomainError("power sweep: need at least 5 points, got " + std::to_string(points_.size()));
  for (const auto& p : points_) {
    if (!(p.mean_phonon_number > 0.0) || !std::isfinite(p.mean_phonon_number))
      throw DomainError("power sweep: mean phonon number must be > 0");
    if (!(p.qi > 0.0) || !std::isfinite(p.qi)) throw DomainError("power sweep: qi must be > 0");
    if (!(p.qi_err >= 0.0) || !std::isfinite(p.qi_err))
      throw DomainError("power sweep: qi error must be >= 0");
  }
  if (decades() < 3.0)
    throw DomainError("power sweep: phonon numbers must span at least 3 decades");
}

double PowerSweepSeries::decades() const noexcept {
  auto [lo, hi] = std::minmax_element(points_.begin(), points_.end(), [](auto& a, auto& b) {
    return a.mean_phonon_number < b.mean_phonon_number;
  });
  return std::log10(hi->mean_phonon_number / lo->mean_phonon_number);
}

ElementLine ElementLine::parse(const std::string& text) {
  if (text == "C1s") return {LineKind::C1s, {}};
  if (text == "O1s") return {LineKind::O1s, {}};
  if (text == "Nb3d") return {LineKind::Nb3d, {}};
  if (text == "Li1s") return {LineKind::Li1s, {}};
  if (text.empty()) throw DomainError("empty element line label");
  return {LineKind::Other, text};
}

std::string ElementLine::name() const {
  switch (kind) {
    case LineKind::C1s: return "C1s";
    case LineKind::O1s: return "O1s";
    case LineKind::Nb3d: return "Nb3d";
    case LineKind::Li1s: return "Li1s";
    case LineKind::Other: return label;
  }
  return label;
}

XpsSpectrum::XpsSpectrum(std::vector<double> binding_energy_ev, std::vector<double> counts,
                         ElementLine line)
    : be_(std::move(binding_energy_ev)), counts_(std::move(counts)), line_(std::move(line)) {
  if (be_.size() != counts_.size())
    throw DomainError("xps: " + std::to_string(counts_.size()) + " counts for " +
                      std::to_string(be_.size()) + " energies");
  if (be_.size() < 2) throw DomainError("xps: need at least 2 samples");
  if (!all_finite(be_) || !all_finite(counts_)) throw DomainError("xps: non-finite value");
  if (!strictly_increasing(be_) && !strictly_decreasing(be_))
    throw DomainError("xps: binding-energy axis is not monotone");
  for (std::size_t i = 0; i < counts_.size(); ++i)
    if (counts_[i] < 0.0) throw DomainError("xps: negative counts at sample " + std::to_string(i));
}

AfmImage::AfmImage(std::size_t nx, std::size_t ny, std::vector<double> heights_m, double dx_m,
                   double dy_m)
    : nx_(nx), ny_(ny), h_(std::move(heights_m)), dx_(dx_m), dy_(dy_m) {
  if (nx_ < min_side || ny_ < min_side)
    throw DomainError("afm: image must be at least 16x16, got " + std::to_string(nx_) + "x" +
                      std::to_string(ny_));
  if (h_.size() != nx_ * ny_)
    throw DomainError("afm: expected " + std::to_string(nx_ * ny_) + " heights, got " +
                      std::to_string(h_.size()));
  if (!(dx_ > 0.0) || !(dy_ > 0.0) || !std::isfinite(dx_) || !std::isfinite(dy_))
    throw DomainError("afm: pixel pitch must be positive");
  if (!all_finite(h_)) throw DomainError("afm: non-finite height");
}

AfmImage AfmImage::with_heights(std::vector<double> heights_m) const {
  return AfmImage(nx_, ny_, std::move(heights_m), dx_, dy_);
}

WalkoffCurve::WalkoffCurve(std::vector<double> theta_deg, std::vector<double> eta_deg)
    : theta_(std::move(theta_deg)), eta_(std::move(eta_deg)) {
  if (theta_.size() != eta_.size()) throw DomainError("walkoff: theta/eta length mismatch");
  if (theta_.size() < 3) throw DomainError("walkoff: need at least 3 samples");
  if (!all_finite(theta_) || !all_finite(eta_)) throw DomainError("walkoff: non-finite value");
  if (!strictly_increasing(theta_)) throw DomainError("walkoff: theta not strictly increasing");
  if (theta_.back() - theta_.front() < 90.0)
    throw DomainError("walkoff: theta must span at least 90 degrees");
}

}  // namespace sawkit
