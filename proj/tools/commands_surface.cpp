#include <cmath>
#include <map>
#include <optional>

#include "commands.hpp"
#include "sawkit/afm.hpp"
#include "sawkit/error.hpp"
#include "sawkit/io.hpp"
#include "sawkit/report.hpp"
#include "sawkit/walkoff.hpp"
#include "sawkit/xps.hpp"
#include "sawkit_defaults.hpp"

namespace sawkit_cli {

namespace {

using namespace sawkit;

xps::SensitivityTable parse_sensitivity(const Json& j) {
  const Json& f = j.contains("factors") ? j.at("factors") : j;
  std::map<std::string, double> factors;
  for (const auto& [k, v] : f.items()) factors[k] = v.get<double>();
  return xps::SensitivityTable(std::move(factors));
}

xps::BandModel parse_bands(const Json& j) {
  const Json& arr = j.is_object() ? j.at("bands") : j;
  xps::BandModel m;
  for (const auto& b : arr) {
    xps::Band band;
    band.name = b.at("name").get<std::string>();
    band.center_ev = b.at("center_ev").get<double>();
    band.sigma_ev = b.value("sigma_ev", 0.5);
    band.gamma_ev = b.value("gamma_ev", 0.5);
    band.mix = b.value("mix", xps::default_mix);
    const double freedom = b.value("center_freedom_ev", xps::center_freedom_ev);
    band.center_min_ev = band.center_ev - freedom;
    band.center_max_ev = band.center_ev + freedom;
    m.bands.push_back(std::move(band));
  }
  if (m.bands.empty()) throw DomainError("band model has no bands");
  return m;
}

Json load_json_file(const std::string& path) {
  try {
    return Json::parse(io::read_text_file(path));
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Json band_json(const xps::Band& b) {
  return {{"name", b.name},        {"center_ev", b.center_ev}, {"sigma_ev", b.sigma_ev},
          {"gamma_ev", b.gamma_ev}, {"mix", b.mix},             {"area", b.amplitude}};
}

}  // namespace

void add_surface_commands(CLI::App& app, GlobalOptions& g, int& rc) {
  {
    auto* cmd = app.add_subcommand("xps-quant", "Quantify a directory of per-line XPS spectra");
    cmd->fallthrough();
    auto inputs = std::make_shared<std::vector<std::string>>();
    auto sens = std::make_shared<std::string>();
    auto bands = std::make_shared<std::string>();
    auto nb = std::make_shared<double>(std::nan(""));
    cmd->add_option("inputs", *inputs, "Dataset directories (one XPS CSV per line)")->required();
    cmd->add_option("--sensitivity", *sens, "Sensitivity table JSON")->check(CLI::ExistingFile);
    cmd->add_option("--bands", *bands, "O1s band model JSON")->check(CLI::ExistingFile);
    cmd->add_option("--nb3d52", *nb, "Measured Nb3d5/2 position (eV); default: Nb3d maximum");
    cmd->callback([&g, &rc, inputs, sens, bands, nb] {
      g.config = load_config(g.config_path);
      const Json& cfg = g.section("xps_quant");
      const auto table = parse_sensitivity(
          !sens->empty() ? load_json_file(*sens)
                         : cfg.contains("sensitivity") ? cfg.at("sensitivity")
                                                       : Json::parse(default_sensitivity_json));
      const auto model = parse_bands(!bands->empty() ? load_json_file(*bands)
                                     : cfg.contains("bands") ? cfg.at("bands")
                                                             : Json::parse(default_bands_json));
      std::optional<double> measured;
      if (!std::isnan(*nb)) measured = *nb;
      else if (cfg.contains("nb3d52_ev") && !cfg.at("nb3d52_ev").is_null())
        measured = cfg.at("nb3d52_ev").get<double>();
      xps::ShirleyOptions sopt;
      sopt.tol = cfg.value("shirley_tol", sopt.tol);
      sopt.max_iter = cfg.value("shirley_max_iter", sopt.max_iter);
      std::map<std::string, xps::Window> windows;
      if (cfg.contains("windows"))
        for (const auto& [line, w] : cfg.at("windows").items())
          windows[line] = {w.at(0).get<double>(), w.at(1).get<double>()};

      std::vector<fs::path> datasets;
      for (const auto& in : *inputs) datasets.emplace_back(in);
      rc = run_batch(g, datasets, [&](const fs::path& dir) {
        if (!fs::is_directory(dir)) throw DomainError(dir.string() + " is not a directory");
        std::vector<XpsSpectrum> spectra;
        for (const auto& f : expand_inputs({dir.string()}, {".csv"}))
          spectra.push_back(io::parse_xps_csv(io::read_text_file(f)));
        if (spectra.empty()) throw DomainError(dir.string() + " holds no XPS CSV files");
        const auto shifted = xps::charge_shift(spectra, measured);

        std::map<std::string, double> areas;
        Json lines = Json::object();
        std::vector<report::XpsPanel> panels;
        xps::XpsQuantReport rep;
        std::map<std::string, std::map<std::string, double>> band_areas;
        Json band_fits = Json::object();
        for (const auto& s : shifted.spectra) {
          const std::string name = s.line().name();
          if (areas.count(name)) throw DomainError("two spectra for line " + name);
          std::optional<xps::Window> w;
          if (auto it = windows.find(name); it != windows.end()) w = it->second;
          auto sh = xps::shirley_background(s, w, sopt);
          const double area = sh.net_area();
          areas[name] = area;
          lines[name] = {{"net_area", area}, {"shirley_iterations", sh.iterations},
                         {"window_ev", {sh.energy_ev.front(), sh.energy_ev.back()}}};
          report::XpsPanel panel{name, sh, {}};
          if (s.line().kind == LineKind::O1s) {
            std::vector<double> net(sh.counts.size());
            for (std::size_t i = 0; i < net.size(); ++i) net[i] = sh.counts[i] - sh.background[i];
            const auto fit = xps::fit_bands(sh.energy_ev, net, model);
            Json bj = Json::array();
            for (std::size_t k = 0; k < fit.model.bands.size(); ++k) {
              Json b = band_json(fit.model.bands[k]);
              b["area_err"] = fit.area_errors[k];
              bj.push_back(b);
              band_areas[name][fit.model.bands[k].name] = fit.areas[k];
            }
            band_fits[name] = {{"bands", bj},
                               {"degenerate", fit.degenerate},
                               {"residual_rms", fit.residual_rms},
                               {"n_iterations", fit.n_iterations}};
            panel.bands = fit.model.bands;
          }
          panels.push_back(std::move(panel));
        }
        rep = xps::atomic_percentages(areas, table, areas.count("Nb3d") != 0);
        rep.band_areas = band_areas;
        Json j = report::to_json(rep);
        j["charge_shift_ev"] = shifted.shift_ev;
        j["measured_nb3d52_ev"] = shifted.measured_nb3d52_ev;
        j["lines"] = lines;
        j["band_fits"] = band_fits;
        j["sensitivity_factors"] = table.factors();
        auto name = dir.lexically_normal();
        if (name.filename().empty()) name = name.parent_path();
        j["input"] = name.filename().string();
        return Outputs{report::canonical(j), report::xps_svg(panels)};
      });
    });
  }
  {
    auto* cmd = app.add_subcommand("afm", "Roughness and terrace step heights of AFM grids");
    cmd->fallthrough();
    auto inputs = std::make_shared<std::vector<std::string>>();
    auto order = std::make_shared<int>(-1);
    cmd->add_option("inputs", *inputs, "Grid files or directories")->required();
    cmd->add_option("--order", *order, "Scan-line polynomial order (0, 1, 2)")->check(CLI::Range(0, 2));
    cmd->callback([&g, &rc, inputs, order] {
      g.config = load_config(g.config_path);
      int ord = *order >= 0 ? *order : g.section("afm").value("order", 1);
      if (ord < 0 || ord > 2) throw DomainError("afm order must be 0, 1 or 2");
      std::vector<double> rq;
      const auto files = expand_inputs(*inputs, {".txt", ".afm", ".grid"});
      rc = run_batch(g, files, [&](const fs::path& p) {
        const auto raw = io::parse_afm_grid(io::read_text_file(p));
        const auto flat = afm::remove_line_tilt(raw, ord);
        const double r = afm::rms_roughness(flat);
        Json j = {{"input", p.filename().string()}, {"line_tilt_order", ord}, {"rq_m", r},
                  {"nx", raw.nx()}, {"ny", raw.ny()}};
        std::optional<afm::StepHeightResult> steps;
        try {
          steps = afm::fit_step_heights(flat);
          j["step_heights"] = report::to_json(*steps);
          j["step_height_error"] = nullptr;
        } catch (const Error& e) {
          j["step_heights"] = nullptr;
          j["step_height_error"] = e.what();
        }
        rq.push_back(r);
        const auto hist = steps ? steps->histogram : afm::height_histogram(flat);
        return Outputs{report::canonical(j), report::afm_svg(hist, steps ? &*steps : nullptr)};
      });
      if (rq.size() > 1) {
        double mean = 0.0;
        for (double v : rq) mean += v;
        mean /= static_cast<double>(rq.size());
        double var = 0.0;
        for (double v : rq) var += (v - mean) * (v - mean);
        const double sd = std::sqrt(var / static_cast<double>(rq.size() - 1));
        write_output(g, "afm_summary.json",
                     report::canonical({{"n_images", rq.size()}, {"rq_mean_m", mean}, {"rq_stdev_m", sd}}));
      }
    });
  }
  {
    auto* cmd = app.add_subcommand("walkoff", "Zero walk-off drive angles from eta(theta) curves");
    cmd->fallthrough();
    auto inputs = std::make_shared<std::vector<std::string>>();
    auto hw = std::make_shared<int>(0);
    cmd->add_option("inputs", *inputs, "CSV files or directories")->required();
    cmd->add_option("--half-width", *hw, "Moving-average half width (samples)")->check(CLI::PositiveNumber);
    cmd->callback([&g, &rc, inputs, hw] {
      g.config = load_config(g.config_path);
      const int half = *hw > 0 ? *hw : g.section("walkoff").value("half_width", 3);
      rc = run_batch(g, expand_inputs(*inputs, {".csv"}), [&](const fs::path& p) {
        const auto raw = io::parse_walkoff_csv(io::read_text_file(p));
        const auto smooth = walkoff::smooth_curve(raw, half);
        const auto zeros = walkoff::find_zero_crossings(smooth);
        const auto touches = walkoff::find_near_zero_minima(smooth);
        Json zj = Json::array(), tj = Json::array();
        for (const auto& z : zeros) zj.push_back(report::to_json(z));
        for (const auto& t : touches) tj.push_back(report::to_json(t));
        Json j = {{"input", p.filename().string()}, {"half_width", half}, {"zero_crossings", zj},
                  {"near_zero_minima", tj}, {"tangency_threshold_deg", walkoff::tangency_threshold_deg}};
        return Outputs{report::canonical(j), report::walkoff_svg(raw, smooth, zeros)};
      });
    });
  }
}

}  // namespace sawkit_cli
