#pragma once

#include <string>
#include <vector>

namespace sawkit::svg {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  std::string label;
  bool markers = false;
  double stroke_width = 1.5;
};

inline Series make_series(std::string color, std::string label, bool markers = false) {
  Series s;
  s.color = std::move(color);
  s.label = std::move(label);
  s.markers = markers;
  return s;
}

struct Panel {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<Series> series;
  std::vector<double> marks_x;  ///< vertical marker lines
};

/// Panels stacked vertically in one standalone SVG document.
std::string render(const std::vector<Panel>& panels, double width = 720.0,
                   double panel_height = 280.0);

}  // namespace sawkit::svg
