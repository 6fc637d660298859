#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sawkit_cli {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct GlobalOptions {
  std::uint64_t seed = 1;
  bool keep_going = false;
  bool emit_svg = false;
  std::string out_dir = ".";
  std::string config_path;
  Json config = Json::object();

  /// Section of the run config, or an empty object.
  const Json& section(const std::string& name) const;
};

/// Loads and checks the run config named by --config. Unknown sections or
/// keys are rejected.
Json load_config(const std::string& path);

/// Files named on the command line; directories expand to their regular files
/// with one of `extensions`, sorted by name.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs,
                                    const std::vector<std::string>& extensions);

struct Outputs {
  std::string json;                 ///< canonical JSON report
  std::optional<std::string> svg;   ///< written only with --emit-svg
};

/// Runs `work` on every input. Success writes <out>/<stem>.json (and .svg);
/// failure writes <out>/<stem>.error.json. Stops at the first failure unless
/// --keep-going. Returns the process exit code.
int run_batch(const GlobalOptions& g, const std::vector<fs::path>& inputs,
              const std::function<Outputs(const fs::path&)>& work);

void write_output(const GlobalOptions& g, const std::string& name, const std::string& contents);

}  // namespace sawkit_cli
