#include "sawkit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sawkit::svg {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<double> nice_ticks(double lo, double hi) {
  std::vector<double> t;
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step)
    t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  return t;
}

}  // namespace

std::string render(const std::vector<Panel>& panels, double width, double panel_height) {
  const double ml = 80, mr = 20, mt = 30, mb = 45;
  const double total_h = panel_height * static_cast<double>(std::max<std::size_t>(panels.size(), 1));
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
    << num(total_h) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(total_h)
    << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const Panel& panel = panels[p];
    const double y0 = panel_height * static_cast<double>(p);
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = -xlo;
    for (const auto& s : panel.series)
      for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        xlo = std::min(xlo, s.x[i]);
        xhi = std::max(xhi, s.x[i]);
        ylo = std::min(ylo, s.y[i]);
        yhi = std::max(yhi, s.y[i]);
      }
    if (!std::isfinite(xlo)) xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    if (xhi == xlo) xhi = xlo + 1;
    if (yhi == ylo) yhi = ylo + 1;
    const double pad = 0.05 * (yhi - ylo);
    ylo -= pad;
    yhi += pad;

    const double pw = width - ml - mr, ph = panel_height - mt - mb;
    auto sx = [&](double x) { return ml + (x - xlo) / (xhi - xlo) * pw; };
    auto sy = [&](double y) { return y0 + mt + (1.0 - (y - ylo) / (yhi - ylo)) * ph; };

    o << "<g>\n<text x=\"" << num(ml) << "\" y=\"" << num(y0 + 18) << "\" font-size=\"13\">"
      << escape(panel.title) << "</text>\n";
    o << "<rect x=\"" << num(ml) << "\" y=\"" << num(y0 + mt) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : nice_ticks(xlo, xhi)) {
      o << "<line x1=\"" << num(sx(t)) << "\" x2=\"" << num(sx(t)) << "\" y1=\""
        << num(y0 + mt + ph) << "\" y2=\"" << num(y0 + mt + ph + 4) << "\" stroke=\"black\"/>";
      o << "<text x=\"" << num(sx(t)) << "\" y=\"" << num(y0 + mt + ph + 16)
        << "\" text-anchor=\"middle\">" << label(t) << "</text>\n";
    }
    for (double t : nice_ticks(ylo, yhi)) {
      o << "<line x1=\"" << num(ml - 4) << "\" x2=\"" << num(ml) << "\" y1=\"" << num(sy(t))
        << "\" y2=\"" << num(sy(t)) << "\" stroke=\"black\"/>";
      o << "<text x=\"" << num(ml - 6) << "\" y=\"" << num(sy(t) + 4)
        << "\" text-anchor=\"end\">" << label(t) << "</text>\n";
    }
    o << "<text x=\"" << num(ml + pw / 2) << "\" y=\"" << num(y0 + panel_height - 8)
      << "\" text-anchor=\"middle\">" << escape(panel.xlabel) << "</text>\n";
    o << "<text transform=\"translate(14," << num(y0 + mt + ph / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(panel.ylabel) << "</text>\n";

    for (double m : panel.marks_x) {
      if (m < xlo || m > xhi) continue;
      o << "<line x1=\"" << num(sx(m)) << "\" x2=\"" << num(sx(m)) << "\" y1=\"" << num(y0 + mt)
        << "\" y2=\"" << num(y0 + mt + ph) << "\" stroke=\"#d62728\" stroke-dasharray=\"4 3\"/>\n";
    }
    double legend_y = y0 + mt + 14;
    for (const auto& s : panel.series) {
      const std::size_t n = std::min(s.x.size(), s.y.size());
      if (s.markers) {
        for (std::size_t i = 0; i < n; ++i) {
          if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
          o << "<circle cx=\"" << num(sx(s.x[i])) << "\" cy=\"" << num(sy(s.y[i]))
            << "\" r=\"1.6\" fill=\"" << s.color << "\"/>";
        }
        o << '\n';
      } else if (n > 0) {
        o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\""
          << num(s.stroke_width) << "\" points=\"";
        for (std::size_t i = 0; i < n; ++i) {
          if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
          o << num(sx(s.x[i])) << ',' << num(sy(s.y[i])) << ' ';
        }
        o << "\"/>\n";
      }
      if (!s.label.empty()) {
        o << "<text x=\"" << num(ml + pw - 8) << "\" y=\"" << num(legend_y)
          << "\" text-anchor=\"end\" fill=\"" << s.color << "\">" << escape(s.label) << "</text>\n";
        legend_y += 14;
      }
    }
    o << "</g>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace sawkit::svg
