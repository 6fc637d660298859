#include "batch.hpp"

#include <algorithm>
#include <iostream>
#include <set>

#include "sawkit/error.hpp"
#include "sawkit/io.hpp"
#include "sawkit/report.hpp"

namespace sawkit_cli {

const Json& GlobalOptions::section(const std::string& name) const {
  static const Json empty = Json::object();
  auto it = config.find(name);
  return it == config.end() ? empty : *it;
}

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  Json j;
  try {
    j = Json::parse(sawkit::io::read_text_file(path));
  } catch (const Json::parse_error& e) {
    throw sawkit::ParseError(path + ": " + e.what());
  }
  static const std::map<std::string, std::set<std::string>> schema = {
      {"fit_resonance", {"model"}},
      {"fit_tempsweep", {"reference_temperature_K"}},
      {"fit_powersweep", {"beta"}},
      {"xps_quant", {"sensitivity", "bands", "windows", "nb3d52_ev", "shirley_tol", "shirley_max_iter"}},
      {"afm", {"order"}},
      {"walkoff", {"half_width"}},
  };
  if (!j.is_object()) throw sawkit::ParseError(path + ": config must be a JSON object");
  for (const auto& [section, body] : j.items()) {
    auto it = schema.find(section);
    if (it == schema.end()) throw sawkit::ParseError(path + ": unknown config section '" + section + "'");
    if (!body.is_object()) throw sawkit::ParseError(path + ": section '" + section + "' must be an object");
    for (const auto& [key, value] : body.items())
      if (!it->second.count(key))
        throw sawkit::ParseError(path + ": unknown key '" + key + "' in section '" + section + "'");
  }
  return j;
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs,
                                    const std::vector<std::string>& extensions) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p)) {
        if (!e.is_regular_file()) continue;
        const auto ext = e.path().extension().string();
        if (extensions.empty() || std::find(extensions.begin(), extensions.end(), ext) != extensions.end())
          found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

void write_output(const GlobalOptions& g, const std::string& name, const std::string& contents) {
  fs::create_directories(g.out_dir);
  sawkit::io::write_text_file_atomic(fs::path(g.out_dir) / name, contents);
}

int run_batch(const GlobalOptions& g, const std::vector<fs::path>& inputs,
              const std::function<Outputs(const fs::path&)>& work) {
  if (inputs.empty()) {
    std::cerr << "error: no input files\n";
    return 1;
  }
  int failures = 0;
  for (const auto& in : inputs) {
    fs::path norm = in.lexically_normal();
    if (norm.filename().empty()) norm = norm.parent_path();
    const std::string stem = fs::is_directory(norm) ? norm.filename().string() : norm.stem().string();
    try {
      const Outputs o = work(in);
      write_output(g, stem + ".json", o.json);
      if (g.emit_svg && o.svg) write_output(g, stem + ".svg", *o.svg);
    } catch (const std::exception& e) {
      ++failures;
      std::cerr << in.string() << ": " << e.what() << "\n";
      const Json err = {{"input", norm.filename().string()}, {"error", e.what()}};
      try {
        write_output(g, stem + ".error.json", sawkit::report::canonical(err));
      } catch (const std::exception& w) {
        std::cerr << "cannot write error record: " << w.what() << "\n";
      }
      if (!g.keep_going) break;
    }
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace sawkit_cli
