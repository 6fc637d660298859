#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <string>

#include "sawkit/error.hpp"
#include "sawkit/io.hpp"

using namespace sawkit;

namespace {

std::string s11_rows(int n, double f_start = 1e6) {
  std::string t = "freq_hz,re,im\n";
  for (int i = 0; i < n; ++i) t += io::format_double(f_start + 1e3 * i) + ",0.5,-0.25\n";
  return t;
}

std::string afm_text(int nx, int ny, int rows) {
  std::string t = std::to_string(nx) + " " + std::to_string(ny) + " 1e-9 1e-9\n";
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < nx; ++c) t += c ? " 0" : "0";
    t += "\n";
  }
  return t;
}

}  // namespace

TEST_CASE("s11 csv: minimal file parses with empty metadata") {
  const auto s = io::parse_s11_csv(s11_rows(8));
  CHECK(s.size() == 8);
  CHECK(s.meta().empty());
  CHECK(s.values()[3] == Complex(0.5, -0.25));
}

TEST_CASE("s11 csv: metadata lines pass through") {
  const auto s = io::parse_s11_csv("# temperature_mK=10\n" + s11_rows(8));
  REQUIRE(s.meta().count("temperature_mK") == 1);
  CHECK(s.meta().at("temperature_mK") == "10");
}

TEST_CASE("s11 csv: duplicated frequency names its line") {
  std::string t = s11_rows(8);
  t += "1007000,0.1,0.1\n";  // repeats the last frequency
  try {
    io::parse_s11_csv(t);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 10);
  }
}

TEST_CASE("s11 csv: short, malformed and headerless inputs are rejected") {
  CHECK_THROWS_AS(io::parse_s11_csv(s11_rows(7)), Error);
  CHECK_THROWS_AS(io::parse_s11_csv("freq_hz,re,im\n1,2\n"), ParseError);
  CHECK_THROWS_AS(io::parse_s11_csv("1,2,3\n"), ParseError);
  CHECK_THROWS_AS(io::parse_s11_csv(s11_rows(8) + "2e6,nan,0\n"), ParseError);
}

TEST_CASE("s11 csv round trip is exact") {
  std::vector<double> f;
  std::vector<Complex> v;
  for (int i = 0; i < 20; ++i) {
    f.push_back(688.4e6 + 0.1 * i + 1.0 / 3.0);
    v.emplace_back(std::sin(i * 0.7) / 7.0, std::cos(i * 1.3) * 1e-9);
  }
  const ComplexSpectrum s(f, v, {{"k", "v"}});
  const auto back = io::parse_s11_csv(io::to_s11_csv(s));
  CHECK(std::equal(f.begin(), f.end(), back.frequencies_hz().begin()));
  CHECK(std::equal(v.begin(), v.end(), back.values().begin()));
  CHECK(back.meta().at("k") == "v");
}

TEST_CASE("xps csv: 32 rows with line=O1s") {
  std::string t = "# line=O1s\nbe_ev,counts\n";
  for (int i = 0; i < 32; ++i) t += std::to_string(540 - i) + "," + std::to_string(100 + i) + "\n";
  const auto s = io::parse_xps_csv(t);
  CHECK(s.size() == 32);
  CHECK(s.line().kind == LineKind::O1s);
  CHECK_FALSE(s.ascending());
}

TEST_CASE("xps csv: missing line tag and negative counts are rejected") {
  CHECK_THROWS_AS(io::parse_xps_csv("be_ev,counts\n1,2\n2,3\n"), Error);
  CHECK_THROWS_AS(io::parse_xps_csv("# line=O1s\nbe_ev,counts\n1,2\n2,-3\n3,4\n"), Error);
}

TEST_CASE("afm grid: 16x16 zeros is a constant image") {
  const auto img = io::parse_afm_grid(afm_text(16, 16, 16));
  CHECK(img.nx() == 16);
  CHECK(img.ny() == 16);
  CHECK(img.dx_m() == 1e-9);
  for (double h : img.heights_m()) CHECK(h == 0.0);
}

TEST_CASE("afm grid: header/row count mismatch is rejected") {
  CHECK_THROWS_AS(io::parse_afm_grid(afm_text(16, 16, 15)), Error);
}

TEST_CASE("afm grid: non-finite heights are rejected") {
  std::string t = afm_text(16, 16, 16);
  t.replace(t.find("\n0") + 1, 1, "inf");
  CHECK_THROWS_AS(io::parse_afm_grid(t), Error);
}

TEST_CASE("sweep and walkoff csv round trips") {
  TemperatureSweepSeries ts({{0.01, 690e6, 3.0}, {0.05, 690.001e6, 3.0}, {0.1, 690.0015e6, 3.0}, {0.2, 690.002e6, 3.0}}, 0.2);
  const auto ts2 = io::parse_tempsweep_csv(io::to_tempsweep_csv(ts));
  REQUIRE(ts2.points().size() == 4);
  CHECK(ts2.points()[1].f0_hz == 690.001e6);
  CHECK(ts2.reference_temperature_K() == 0.2);

  PowerSweepSeries ps({{1.0, 5e3, 50.0}, {10.0, 5.2e3, 52.0}, {1e2, 5.5e3, 55.0}, {1e3, 6e3, 60.0}, {1e3 + 0.5, 6.1e3, 61.0}}, 0.01, 690e6);
  const auto ps2 = io::parse_powersweep_csv(io::to_powersweep_csv(ps));
  CHECK(ps2.temperature_K() == 0.01);
  CHECK(ps2.f0_hz() == 690e6);
  CHECK(ps2.points()[3].qi == 6e3);
  CHECK(ps2.points()[4].mean_phonon_number == 1000.5);
  CHECK(ps2.decades() == doctest::Approx(std::log10(1000.5)));

  std::vector<double> th, eta;
  for (int i = 0; i <= 90; ++i) {
    th.push_back(i - 45.0);
    eta.push_back(0.01 * i);
  }
  const auto w = io::parse_walkoff_csv(io::to_walkoff_csv(WalkoffCurve(th, eta)));
  CHECK(w.size() == 91);
  CHECK(w.eta_deg()[90] == 0.9);
}

TEST_CASE("domain invariants") {
  CHECK_THROWS_AS(WalkoffCurve({0.0, 10.0, 20.0}, {0.0, 1.0, 2.0}), DomainError);  // spans < 90 deg
  CHECK_THROWS_AS(AfmImage(4, 4, std::vector<double>(16), 1e-9, 1e-9), DomainError);
  CHECK(ElementLine::parse("Nb3d").kind == LineKind::Nb3d);
  CHECK(ElementLine::parse("Fe2p").name() == "Fe2p");
}

TEST_CASE("format_double gives the shortest round-tripping text") {
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(688.4e6) == "688400000");
  const double third = 1.0 / 3.0;
  CHECK(std::stod(io::format_double(third)) == third);
}

TEST_CASE("atomic write leaves the target complete") {
  const auto p = std::filesystem::temp_directory_path() / "sawkit_io_atomic.txt";
  io::write_text_file_atomic(p, "first");
  io::write_text_file_atomic(p, "second");
  CHECK(io::read_text_file(p) == "second");
  std::filesystem::remove(p);
}
