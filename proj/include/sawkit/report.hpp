#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "sawkit/afm.hpp"
#include "sawkit/resonance.hpp"
#include "sawkit/tls.hpp"
#include "sawkit/walkoff.hpp"
#include "sawkit/xps.hpp"

// JSON views of the result types and SVG figures for the CLI reports.
namespace sawkit::report {

using Json = nlohmann::json;

/// Two-space indented JSON with sorted keys and a trailing newline.
std::string canonical(const Json& j);

Json to_json(const resonance::ResonanceModelParams& p);
Json to_json(const resonance::ResonanceFitResult& r);
Json to_json(const tls::TlsFitResult& r);
Json to_json(const tls::PowerModelParams& p);
Json to_json(const tls::PowerFitResult& r);
Json to_json(const xps::XpsQuantReport& r);
Json to_json(const afm::StepHeightResult& r);
Json to_json(const walkoff::ZeroCrossing& z);
Json to_json(const walkoff::NearZeroMinimum& m);

std::string resonance_svg(const ComplexSpectrum& data, const resonance::ResonanceFitResult& fit);

struct XpsPanel {
  std::string line;
  xps::ShirleyResult shirley;
  std::vector<xps::Band> bands;  ///< empty when the line was not deconvolved
};
std::string xps_svg(const std::vector<XpsPanel>& panels);

std::string afm_svg(const afm::Histogram& hist, const afm::StepHeightResult* steps);

std::string walkoff_svg(const WalkoffCurve& raw, const WalkoffCurve& smoothed,
                        const std::vector<walkoff::ZeroCrossing>& zeros);

}  // namespace sawkit::report
