#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace sawkit {

using Complex = std::complex<double>;
using Metadata = std::map<std::string, std::string>;

/// Frequency-indexed complex reflection trace (S11).
///
/// Invariants, checked on construction: at least 8 samples, strictly
/// increasing frequencies, one finite value per frequency.
class ComplexSpectrum {
 public:
  static constexpr std::size_t min_length = 8;

  ComplexSpectrum(std::vector<double> frequencies_hz, std::vector<Complex> values,
                  Metadata meta = {});

  std::span<const double> frequencies_hz() const noexcept { return freq_; }
  std::span<const Complex> values() const noexcept { return values_; }
  const Metadata& meta() const noexcept { return meta_; }
  std::size_t size() const noexcept { return freq_.size(); }

 private:
  std::vector<double> freq_;
  std::vector<Complex> values_;
  Metadata meta_;
};

struct TemperaturePoint {
  double temperature_K;
  double f0_hz;
  double f0_err_hz;
};

/// Resonance frequency of one mode versus fridge temperature.
class TemperatureSweepSeries {
 public:
  static constexpr double default_reference_temperature_K = 0.200;

  explicit TemperatureSweepSeries(std::vector<TemperaturePoint> points,
                                  double reference_temperature_K = default_reference_temperature_K);

  std::span<const TemperaturePoint> points() const noexcept { return points_; }
  double reference_temperature_K() const noexcept { return t_ref_; }

 private:
  std::vector<TemperaturePoint> points_;
  double t_ref_;
};

struct PowerPoint {
  double mean_phonon_number;
  double qi;
  double qi_err;
};

/// Internal Q versus mean phonon number at fixed temperature.
class PowerSweepSeries {
 public:
  PowerSweepSeries(std::vector<PowerPoint> points, double temperature_K, double f0_hz);

  std::span<const PowerPoint> points() const noexcept { return points_; }
  double temperature_K() const noexcept { return temperature_K_; }
  double f0_hz() const noexcept { return f0_hz_; }
  /// log10(max n / min n).
  double decades() const noexcept;

 private:
  std::vector<PowerPoint> points_;
  double temperature_K_;
  double f0_hz_;
};

enum class LineKind { C1s, O1s, Nb3d, Li1s, Other };

struct ElementLine {
  LineKind kind = LineKind::Other;
  std::string label;  // only meaningful for Other

  static ElementLine parse(const std::string& text);
  std::string name() const;
  friend bool operator==(const ElementLine&, const ElementLine&) = default;
  friend auto operator<=>(const ElementLine& a, const ElementLine& b) { return a.name() <=> b.name(); }
};

/// Counts versus binding energy for one core line. The energy axis may be
/// ascending or descending but must be strictly monotone.
class XpsSpectrum {
 public:
  XpsSpectrum(std::vector<double> binding_energy_ev, std::vector<double> counts, ElementLine line);

  std::span<const double> binding_energy_ev() const noexcept { return be_; }
  std::span<const double> counts() const noexcept { return counts_; }
  const ElementLine& line() const noexcept { return line_; }
  std::size_t size() const noexcept { return be_.size(); }
  bool ascending() const noexcept { return be_.back() > be_.front(); }

 private:
  std::vector<double> be_;
  std::vector<double> counts_;
  ElementLine line_;
};

/// Row-major topograph, heights in meters. Row index is the slow (y) axis.
class AfmImage {
 public:
  static constexpr std::size_t min_side = 16;

  AfmImage(std::size_t nx, std::size_t ny, std::vector<double> heights_m, double dx_m, double dy_m);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  double dx_m() const noexcept { return dx_; }
  double dy_m() const noexcept { return dy_; }
  std::span<const double> heights_m() const noexcept { return h_; }
  std::span<const double> row(std::size_t iy) const noexcept { return {h_.data() + iy * nx_, nx_}; }
  double at(std::size_t ix, std::size_t iy) const noexcept { return h_[iy * nx_ + ix]; }

  /// Same geometry, new heights.
  AfmImage with_heights(std::vector<double> heights_m) const;

 private:
  std::size_t nx_, ny_;
  std::vector<double> h_;
  double dx_, dy_;
};

/// Walk-off angle versus drive angle relative to crystal Z.
class WalkoffCurve {
 public:
  WalkoffCurve(std::vector<double> theta_deg, std::vector<double> eta_deg);

  std::span<const double> theta_deg() const noexcept { return theta_; }
  std::span<const double> eta_deg() const noexcept { return eta_; }
  std::size_t size() const noexcept { return theta_.size(); }

 private:
  std::vector<double> theta_;
  std::vector<double> eta_;
};

}  // namespace sawkit
