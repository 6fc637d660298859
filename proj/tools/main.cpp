#include <iostream>

#include "commands.hpp"
#include "sawkit/error.hpp"

int main(int argc, char** argv) {
  using namespace sawkit_cli;
  CLI::App app{"sawkit: resonator, TLS, XPS, AFM and walk-off analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed for synthetic data")->capture_default_str();
  app.add_flag("--keep-going", g.keep_going, "Continue the batch after a failed input");
  app.add_flag("--emit-svg", g.emit_svg, "Write an SVG figure next to each JSON report");
  app.add_option("--out", g.out_dir, "Output directory")->capture_default_str();
  app.add_option("--config", g.config_path, "Run configuration (JSON)")->check(CLI::ExistingFile);

  int rc = 0;
  add_fit_commands(app, g, rc);
  add_surface_commands(app, g, rc);
  add_synth_commands(app, g, rc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const sawkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
