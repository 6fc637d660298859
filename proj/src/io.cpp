#include "sawkit/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "sawkit/error.hpp"

namespace sawkit::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

struct Line {
  std::size_t number;
  std::string_view text;
};

// Splits into content lines, pulling `# key=value` metadata out as it goes.
// Comment lines without '=' are ignored.
struct Document {
  Metadata meta;
  std::vector<Line> lines;
};

Document split_document(std::string_view text) {
  Document doc;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto raw = text.substr(pos, nl - pos);
    ++number;
    pos = nl + 1;
    auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = trim(line.substr(1));
      auto eq = body.find('=');
      if (eq != std::string_view::npos) {
        auto key = trim(body.substr(0, eq));
        auto value = trim(body.substr(eq + 1));
        if (key.empty()) throw ParseError("metadata line with empty key", number);
        doc.meta[std::string(key)] = std::string(value);
      }
      continue;
    }
    doc.lines.push_back({number, line});
  }
  return doc;
}

double parse_number(std::string_view field, std::size_t line_number) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
    throw ParseError("cannot parse number '" + std::string(field) + "'", line_number);
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto next = line.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(line.substr(pos));
      break;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    auto start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    out.push_back(line.substr(start, pos - start));
  }
  return out;
}

struct Table {
  Metadata meta;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> line_numbers;
};

Table parse_csv_table(std::string_view text, std::string_view header) {
  auto doc = split_document(text);
  if (doc.lines.empty()) throw ParseError("missing header '" + std::string(header) + "'");
  const auto& head = doc.lines.front();
  auto expected = split(header, ',');
  auto got = split(head.text, ',');
  bool ok = got.size() == expected.size();
  for (std::size_t i = 0; ok && i < got.size(); ++i) ok = trim(got[i]) == expected[i];
  if (!ok)
    throw ParseError("expected header '" + std::string(header) + "', got '" +
                         std::string(head.text) + "'",
                     head.number);
  Table table;
  table.meta = std::move(doc.meta);
  for (std::size_t i = 1; i < doc.lines.size(); ++i) {
    const auto& line = doc.lines[i];
    auto fields = split(line.text, ',');
    if (fields.size() != expected.size())
      throw ParseError("expected " + std::to_string(expected.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       line.number);
    std::vector<double> row;
    row.reserve(fields.size());
    for (auto f : fields) {
      double v = parse_number(f, line.number);
      if (!std::isfinite(v)) throw ParseError("non-finite value", line.number);
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
    table.line_numbers.push_back(line.number);
  }
  return table;
}

double meta_number(const Metadata& meta, const std::string& key) {
  auto it = meta.find(key);
  if (it == meta.end()) throw ParseError("missing metadata '# " + key + "='");
  return parse_number(it->second, 0);
}

void write_meta(std::ostringstream& os, const Metadata& meta) {
  for (const auto& [k, v] : meta) os << "# " << k << '=' << v << '\n';
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf, ptr);
}

ComplexSpectrum parse_s11_csv(std::string_view text) {
  auto table = parse_csv_table(text, "freq_hz,re,im");
  std::vector<double> freq;
  std::vector<Complex> values;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    if (!freq.empty() && !(r[0] > freq.back()))
      throw ParseError(r[0] == freq.back() ? "duplicate frequency " + format_double(r[0])
                                           : "frequency axis not strictly increasing",
                       table.line_numbers[i]);
    freq.push_back(r[0]);
    values.emplace_back(r[1], r[2]);
  }
  if (freq.size() < ComplexSpectrum::min_length)
    throw ParseError("need at least 8 data rows, got " + std::to_string(freq.size()));
  return ComplexSpectrum(std::move(freq), std::move(values), std::move(table.meta));
}

std::string to_s11_csv(const ComplexSpectrum& spectrum) {
  std::ostringstream os;
  write_meta(os, spectrum.meta());
  os << "freq_hz,re,im\n";
  auto f = spectrum.frequencies_hz();
  auto v = spectrum.values();
  for (std::size_t i = 0; i < f.size(); ++i)
    os << format_double(f[i]) << ',' << format_double(v[i].real()) << ','
       << format_double(v[i].imag()) << '\n';
  return os.str();
}

XpsSpectrum parse_xps_csv(std::string_view text) {
  auto table = parse_csv_table(text, "be_ev,counts");
  auto it = table.meta.find("line");
  if (it == table.meta.end()) throw ParseError("missing metadata '# line=<element>'");
  auto line = ElementLine::parse(it->second);
  std::vector<double> be, counts;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    if (r[1] < 0.0) throw ParseError("negative counts", table.line_numbers[i]);
    if (be.size() >= 2) {
      bool up = be[1] > be[0];
      if (up ? !(r[0] > be.back()) : !(r[0] < be.back()))
        throw ParseError("binding-energy axis not monotone", table.line_numbers[i]);
    } else if (be.size() == 1 && r[0] == be.back()) {
      throw ParseError("duplicate binding energy", table.line_numbers[i]);
    }
    be.push_back(r[0]);
    counts.push_back(r[1]);
  }
  return XpsSpectrum(std::move(be), std::move(counts), std::move(line));
}

std::string to_xps_csv(const XpsSpectrum& spectrum) {
  std::ostringstream os;
  os << "# line=" << spectrum.line().name() << '\n';
  os << "be_ev,counts\n";
  auto be = spectrum.binding_energy_ev();
  auto c = spectrum.counts();
  for (std::size_t i = 0; i < be.size(); ++i)
    os << format_double(be[i]) << ',' << format_double(c[i]) << '\n';
  return os.str();
}

AfmImage parse_afm_grid(std::string_view text) {
  auto doc = split_document(text);
  if (doc.lines.empty()) throw ParseError("missing header 'nx ny dx_m dy_m'");
  const auto& head = doc.lines.front();
  auto hf = split_ws(head.text);
  if (hf.size() != 4) throw ParseError("header must be 'nx ny dx_m dy_m'", head.number);
  auto as_size = [&](std::string_view f) {
    double v = parse_number(f, head.number);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e8)
      throw ParseError("image dimension must be a positive integer", head.number);
    return static_cast<std::size_t>(v);
  };
  const std::size_t nx = as_size(hf[0]);
  const std::size_t ny = as_size(hf[1]);
  const double dx = parse_number(hf[2], head.number);
  const double dy = parse_number(hf[3], head.number);
  const std::size_t rows = doc.lines.size() - 1;
  if (rows != ny)
    throw ParseError("dimension mismatch: header declares " + std::to_string(ny) + " rows, found " +
                     std::to_string(rows));
  std::vector<double> h;
  h.reserve(nx * ny);
  for (std::size_t i = 1; i < doc.lines.size(); ++i) {
    const auto& line = doc.lines[i];
    auto fields = split_ws(line.text);
    if (fields.size() != nx)
      throw ParseError("dimension mismatch: expected " + std::to_string(nx) + " heights, got " +
                           std::to_string(fields.size()),
                       line.number);
    for (auto f : fields) {
      double v = parse_number(f, line.number);
      if (!std::isfinite(v)) throw ParseError("non-finite height", line.number);
      h.push_back(v);
    }
  }
  try {
    return AfmImage(nx, ny, std::move(h), dx, dy);
  } catch (const DomainError& e) {
    throw ParseError(e.what(), head.number);
  }
}

std::string to_afm_grid(const AfmImage& image) {
  std::ostringstream os;
  os << image.nx() << ' ' << image.ny() << ' ' << format_double(image.dx_m()) << ' '
     << format_double(image.dy_m()) << '\n';
  for (std::size_t iy = 0; iy < image.ny(); ++iy) {
    auto row = image.row(iy);
    for (std::size_t ix = 0; ix < row.size(); ++ix) {
      if (ix) os << ' ';
      os << format_double(row[ix]);
    }
    os << '\n';
  }
  return os.str();
}

TemperatureSweepSeries parse_tempsweep_csv(std::string_view text) {
  auto table = parse_csv_table(text, "temperature_K,f0_hz,f0_err_hz");
  std::vector<TemperaturePoint> pts;
  for (const auto& r : table.rows) pts.push_back({r[0], r[1], r[2]});
  double t_ref = TemperatureSweepSeries::default_reference_temperature_K;
  if (table.meta.count("reference_temperature_K"))
    t_ref = meta_number(table.meta, "reference_temperature_K");
  try {
    return TemperatureSweepSeries(std::move(pts), t_ref);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::string to_tempsweep_csv(const TemperatureSweepSeries& series) {
  std::ostringstream os;
  os << "# reference_temperature_K=" << format_double(series.reference_temperature_K()) << '\n';
  os << "temperature_K,f0_hz,f0_err_hz\n";
  for (const auto& p : series.points())
    os << format_double(p.temperature_K) << ',' << format_double(p.f0_hz) << ','
       << format_double(p.f0_err_hz) << '\n';
  return os.str();
}

PowerSweepSeries parse_powersweep_csv(std::string_view text) {
  auto table = parse_csv_table(text, "n_mean,qi,qi_err");
  std::vector<PowerPoint> pts;
  for (const auto& r : table.rows) pts.push_back({r[0], r[1], r[2]});
  const double t = meta_number(table.meta, "temperature_K");
  const double f0 = meta_number(table.meta, "f0_hz");
  try {
    return PowerSweepSeries(std::move(pts), t, f0);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::string to_powersweep_csv(const PowerSweepSeries& series) {
  std::ostringstream os;
  os << "# f0_hz=" << format_double(series.f0_hz()) << '\n';
  os << "# temperature_K=" << format_double(series.temperature_K()) << '\n';
  os << "n_mean,qi,qi_err\n";
  for (const auto& p : series.points())
    os << format_double(p.mean_phonon_number) << ',' << format_double(p.qi) << ','
       << format_double(p.qi_err) << '\n';
  return os.str();
}

WalkoffCurve parse_walkoff_csv(std::string_view text) {
  auto table = parse_csv_table(text, "theta_deg,eta_deg");
  std::vector<double> theta, eta;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (!theta.empty() && !(table.rows[i][0] > theta.back()))
      throw ParseError("theta not strictly increasing", table.line_numbers[i]);
    theta.push_back(table.rows[i][0]);
    eta.push_back(table.rows[i][1]);
  }
  try {
    return WalkoffCurve(std::move(theta), std::move(eta));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::string to_walkoff_csv(const WalkoffCurve& curve) {
  std::ostringstream os;
  os << "theta_deg,eta_deg\n";
  auto t = curve.theta_deg();
  auto e = curve.eta_deg();
  for (std::size_t i = 0; i < t.size(); ++i)
    os << format_double(t[i]) << ',' << format_double(e[i]) << '\n';
  return os.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot rename '" + tmp.string() + "': " + ec.message());
}

}  // namespace sawkit::io
