#pragma once

#include <CLI11.hpp>

#include "batch.hpp"

namespace sawkit_cli {

// Each function registers its subcommands on `app`; the callbacks store the
// process exit code in `rc`.
void add_fit_commands(CLI::App& app, GlobalOptions& g, int& rc);
void add_surface_commands(CLI::App& app, GlobalOptions& g, int& rc);
void add_synth_commands(CLI::App& app, GlobalOptions& g, int& rc);

}  // namespace sawkit_cli
