#include <doctest.h>

#include <cmath>

#include "sawkit/afm.hpp"
#include "sawkit/error.hpp"
#include "sawkit/synth.hpp"

using namespace sawkit;

namespace {

AfmImage image_from(std::size_t nx, std::size_t ny, auto f) {
  std::vector<double> h(nx * ny);
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t x = 0; x < nx; ++x) h[y * nx + x] = f(static_cast<double>(x), static_cast<double>(y));
  return AfmImage(nx, ny, std::move(h), 1e-8, 1e-8);
}

double max_abs(const AfmImage& img) {
  double m = 0.0;
  for (double v : img.heights_m()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("line tilt: constant and per-row ramps vanish") {
  CHECK(max_abs(afm::remove_line_tilt(image_from(32, 32, [](double, double) { return 4e-9; }))) == 0.0);
  const auto ramps = image_from(64, 32, [](double x, double y) { return 1e-9 * y + (2e-12 + 1e-13 * y) * x; });
  CHECK(max_abs(afm::remove_line_tilt(ramps)) < 1e-22);
  const auto parab = image_from(64, 16, [](double x, double) { return 1e-9 + 1e-12 * x + 3e-14 * x * x; });
  CHECK(max_abs(afm::remove_line_tilt(parab, 2)) < 1e-21);
  CHECK_THROWS_AS(afm::remove_line_tilt(parab, 3), DomainError);
}

TEST_CASE("line tilt: terraces with a global tilt come back to the noise floor") {
  synth::TerraceSpec flat;
  flat.nx = flat.ny = 128;
  flat.noise_m = 0.0;
  auto tilted = flat;
  tilted.tilt_x_m = 4e-11;
  tilted.tilt_y_m = 1e-11;
  const auto a = afm::remove_line_tilt(synth::synth_afm_terraces(flat, 1));
  const auto b = afm::remove_line_tilt(synth::synth_afm_terraces(tilted, 1));
  double worst = 0.0;
  for (std::size_t i = 0; i < a.heights_m().size(); ++i)
    worst = std::max(worst, std::abs(a.heights_m()[i] - b.heights_m()[i]));
  CHECK(worst < 1e-18);
}

TEST_CASE("line tilt is idempotent") {
  synth::TerraceSpec t;
  t.nx = t.ny = 128;
  t.tilt_x_m = 5e-11;
  const auto once = afm::remove_line_tilt(synth::synth_afm_terraces(t, 2));
  const auto twice = afm::remove_line_tilt(once);
  CHECK(std::equal(once.heights_m().begin(), once.heights_m().end(), twice.heights_m().begin()));
}

TEST_CASE("three-point leveling") {
  const auto plane = image_from(32, 32, [](double x, double y) { return 1e-9 + 2e-11 * x - 5e-12 * y; });
  const auto lev = afm::three_point_level(plane, {2, 2}, {28, 3}, {5, 29});
  CHECK(max_abs(lev) < 1e-20);

  // Level image with features away from the sampled neighbourhoods.
  const auto level = image_from(32, 32, [](double x, double y) { return x > 14 && y > 14 ? 3e-10 * std::sin(x * y) : 0.0; });
  const auto same = afm::three_point_level(level, {3, 3}, {12, 3}, {3, 12});
  CHECK(std::equal(level.heights_m().begin(), level.heights_m().end(), same.heights_m().begin()));

  CHECK_THROWS_AS(afm::three_point_level(plane, {1, 1}, {2, 2}, {3, 3}), DomainError);
  CHECK_THROWS_AS(afm::three_point_level(plane, {1, 1}, {40, 2}, {3, 9}), DomainError);
}

TEST_CASE("three-point leveling puts the reference terrace at zero") {
  synth::TerraceSpec t;
  t.nx = t.ny = 128;
  t.noise_m = 20e-12;
  auto tilted = t;
  tilted.tilt_x_m = 3e-12;
  tilted.tilt_y_m = 2e-12;
  const auto flat = synth::synth_afm_terraces(t, 3);
  const auto img = synth::synth_afm_terraces(tilted, 3);
  auto level_of = [&](std::size_t x, std::size_t y) { return std::lround(flat.at(x, y) / t.step_m); };
  auto interior = [&](afm::Pixel p) {
    for (std::size_t y = p.iy - 1; y <= p.iy + 1; ++y)
      for (std::size_t x = p.ix - 1; x <= p.ix + 1; ++x)
        if (level_of(x, y) != level_of(p.ix, p.iy)) return false;
    return true;
  };
  // Three far-apart pixels whose neighbourhoods sit on one terrace.
  const afm::Pixel p1{2, 2};
  const long ref = level_of(2, 2);
  REQUIRE(interior(p1));
  afm::Pixel p2{0, 0}, p3{0, 0};
  for (std::size_t x = 125; x > 64 && p2.ix == 0; --x)
    if (level_of(x, 2) == ref && interior({x, 2})) p2 = {x, 2};
  for (std::size_t y = 125; y > 64 && p3.iy == 0; --y)
    if (level_of(2, y) == ref && interior({2, y})) p3 = {2, y};
  REQUIRE(p2.ix != 0);
  REQUIRE(p3.iy != 0);

  const auto lev = afm::three_point_level(img, p1, p2, p3);
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t y = 0; y < 128; ++y)
    for (std::size_t x = 0; x < 128; ++x)
      if (level_of(x, y) == ref) {
        sum += lev.at(x, y);
        ++n;
      }
  CHECK(std::abs(sum / static_cast<double>(n)) < t.noise_m);
}

TEST_CASE("rms roughness") {
  CHECK(afm::rms_roughness(image_from(16, 16, [](double, double) { return 3.3e-9; })) == 0.0);
  const double h = 2e-10;
  const auto two = image_from(32, 32, [&](double x, double) { return x < 16 ? 0.0 : h; });
  CHECK(afm::rms_roughness(two) == doctest::Approx(h / 2.0).epsilon(1e-12));
  const auto noise = synth::synth_afm_noise(512, 512, 168.7e-12, 2e-8, 1);
  CHECK(afm::rms_roughness(noise) == doctest::Approx(168.7e-12).epsilon(0.02));
}

TEST_CASE("height histogram covers every pixel") {
  const auto noise = synth::synth_afm_noise(128, 128, 1e-10, 2e-8, 4);
  const auto hist = afm::height_histogram(noise);
  std::uint64_t total = 0;
  for (auto c : hist.counts) total += c;
  CHECK(total == 128u * 128u);
  CHECK(hist.bin_width_m >= afm::min_bin_width_m);
}

TEST_CASE("step heights: 240 pm and 200 pm terraces") {
  for (double step : {240e-12, 200e-12}) {
    synth::TerraceSpec t;
    t.step_m = step;
    t.noise_m = 80e-12;
    t.tilt_x_m = 2e-12;
    const auto r = afm::fit_step_heights(afm::remove_line_tilt(synth::synth_afm_terraces(t, 17)));
    CHECK(r.mean_step_m == doctest::Approx(step).epsilon(0.15));
    REQUIRE(r.centers_m.size() == 3);
    CHECK(r.centers_m[0] < r.centers_m[1]);
    CHECK(r.centers_m[1] < r.centers_m[2]);
    CHECK(r.mean_step_err_m > 0.0);
    CHECK(r.width_uncertainty_m == doctest::Approx(80e-12).epsilon(0.3));
  }
}

TEST_CASE("step heights: a single terrace has too few modes") {
  const auto noise = synth::synth_afm_noise(128, 128, 80e-12, 2e-8, 5);
  CHECK_THROWS_WITH_AS(afm::fit_step_heights(noise), doctest::Contains("fewer than 3 resolvable modes"), DomainError);
}
