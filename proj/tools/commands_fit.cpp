#include <optional>

#include "commands.hpp"
#include "sawkit/io.hpp"
#include "sawkit/report.hpp"
#include "sawkit/resonance.hpp"
#include "sawkit/tls.hpp"

namespace sawkit_cli {

namespace {

using namespace sawkit;

template <class T>
std::optional<T> config_value(const Json& section, const char* key) {
  auto it = section.find(key);
  if (it == section.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

}  // namespace

void add_fit_commands(CLI::App& app, GlobalOptions& g, int& rc) {
  {
    auto* cmd = app.add_subcommand("fit-resonance", "Fit S11 traces (freq_hz,re,im CSV)");
    cmd->fallthrough();
    auto inputs = std::make_shared<std::vector<std::string>>();
    auto model = std::make_shared<std::string>();
    cmd->add_option("inputs", *inputs, "CSV files or directories")->required();
    cmd->add_option("--model", *model, "lorentzian or dark")
        ->check(CLI::IsMember({"lorentzian", "dark"}));
    cmd->callback([&g, &rc, inputs, model] {
      g.config = load_config(g.config_path);
      std::string m = *model;
      if (m.empty()) m = config_value<std::string>(g.section("fit_resonance"), "model").value_or("lorentzian");
      if (m != "lorentzian" && m != "dark") throw CLI::ValidationError("--model", "lorentzian or dark");
      const auto kind = m == "dark" ? resonance::ModelKind::dark_mode : resonance::ModelKind::lorentzian;
      rc = run_batch(g, expand_inputs(*inputs, {".csv"}), [&](const fs::path& p) {
        const auto data = io::parse_s11_csv(io::read_text_file(p));
        const auto fit = resonance::fit_resonance(data, kind);
        Json j = report::to_json(fit);
        j["model"] = m;
        j["input"] = p.filename().string();
        return Outputs{report::canonical(j), report::resonance_svg(data, fit)};
      });
    });
  }
  {
    auto* cmd = app.add_subcommand("fit-tempsweep", "Fit F*delta to temperature sweeps");
    cmd->fallthrough();
    auto inputs = std::make_shared<std::vector<std::string>>();
    auto t_ref = std::make_shared<double>(0.0);
    cmd->add_option("inputs", *inputs, "CSV files or directories")->required();
    cmd->add_option("--reference-temperature", *t_ref, "Override the reference temperature (K)")
        ->check(CLI::PositiveNumber);
    cmd->callback([&g, &rc, inputs, t_ref] {
      g.config = load_config(g.config_path);
      std::optional<double> override_t;
      if (*t_ref > 0.0) override_t = *t_ref;
      else override_t = config_value<double>(g.section("fit_tempsweep"), "reference_temperature_K");
      rc = run_batch(g, expand_inputs(*inputs, {".csv"}), [&](const fs::path& p) {
        auto series = io::parse_tempsweep_csv(io::read_text_file(p));
        if (override_t)
          series = TemperatureSweepSeries({series.points().begin(), series.points().end()}, *override_t);
        const auto fit = tls::fit_fdelta(series);
        Json j = report::to_json(fit);
        j["input"] = p.filename().string();
        j["q_tls_at_lowest_T"] = nullptr;
        double t_min = series.points()[0].temperature_K;
        for (const auto& pt : series.points()) t_min = std::min(t_min, pt.temperature_K);
        if (fit.f_delta_tls > 0.0) j["q_tls_at_lowest_T"] = tls::q_tls(fit.f_delta_tls, fit.f0_hz, t_min);
        j["lowest_temperature_K"] = t_min;
        return Outputs{report::canonical(j), std::nullopt};
      });
    });
  }
  {
    auto* cmd = app.add_subcommand("fit-powersweep", "Fit the TLS saturation model to power sweeps");
    cmd->fallthrough();
    auto inputs = std::make_shared<std::vector<std::string>>();
    auto beta = std::make_shared<double>(0.0);
    cmd->add_option("inputs", *inputs, "CSV files or directories")->required();
    cmd->add_option("--beta", *beta, "Hold the saturation exponent fixed")->check(CLI::Range(1e-6, 2.0));
    cmd->callback([&g, &rc, inputs, beta] {
      g.config = load_config(g.config_path);
      std::optional<double> fixed;
      if (*beta > 0.0) fixed = *beta;
      else fixed = config_value<double>(g.section("fit_powersweep"), "beta");
      rc = run_batch(g, expand_inputs(*inputs, {".csv"}), [&](const fs::path& p) {
        const auto series = io::parse_powersweep_csv(io::read_text_file(p));
        const auto fit = tls::fit_power_sweep(series, fixed);
        Json j = report::to_json(fit);
        j["input"] = p.filename().string();
        return Outputs{report::canonical(j), std::nullopt};
      });
    });
  }
}

}  // namespace sawkit_cli
