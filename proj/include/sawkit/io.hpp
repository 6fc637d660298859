#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sawkit/types.hpp"

namespace sawkit::io {

// Text formats. All parsers accept `# key=value` metadata lines and blank
// lines anywhere; the first other line must be the format's header. Errors are
// ParseError carrying the 1-based line number where one applies.
//
//   S11        freq_hz,re,im
//   XPS        be_ev,counts               (requires `# line=<element>`)
//   AFM        nx ny dx_m dy_m, then ny rows of nx heights in meters
//   temp sweep temperature_K,f0_hz,f0_err_hz   (optional `# reference_temperature_K=`)
//   power swp  n_mean,qi,qi_err           (requires `# temperature_K=` and `# f0_hz=`)
//   walk-off   theta_deg,eta_deg

ComplexSpectrum parse_s11_csv(std::string_view text);
std::string to_s11_csv(const ComplexSpectrum& spectrum);

XpsSpectrum parse_xps_csv(std::string_view text);
std::string to_xps_csv(const XpsSpectrum& spectrum);

AfmImage parse_afm_grid(std::string_view text);
std::string to_afm_grid(const AfmImage& image);

TemperatureSweepSeries parse_tempsweep_csv(std::string_view text);
std::string to_tempsweep_csv(const TemperatureSweepSeries& series);

PowerSweepSeries parse_powersweep_csv(std::string_view text);
std::string to_powersweep_csv(const PowerSweepSeries& series);

WalkoffCurve parse_walkoff_csv(std::string_view text);
std::string to_walkoff_csv(const WalkoffCurve& curve);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

std::string read_text_file(const std::filesystem::path& path);
/// Writes via a temporary sibling and rename, so readers never see a partial file.
void write_text_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace sawkit::io
