#include <CLI11.hpp>

#include "dirac/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Floquet spectra of periodic non-self-adjoint Dirac operators"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help message and exit");

  std::string config_path, out_dir;
  double h_override = 0.0;
  bool quiet = false;
  app.add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides out_dir)");
  app.add_option("--h", h_override, "run a single h instead of the configured list")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", quiet, "suppress progress messages");
  app.fallthrough();

  auto* spectrum = app.add_subcommand("spectrum", "trace the spectrum and write CSV, SVG and report.json");
  auto* bounds = app.add_subcommand("bounds", "certify traced spectra against the enclosure bounds");
  auto* sweep = app.add_subcommand("sweep", "distance to the cross as a function of h (sweep.csv)");
  auto* oracle = app.add_subcommand("oracle", "closed-form discriminant table for a constant potential");
  auto* check = app.add_subcommand("check", "run the invariant suite and print a pass/fail table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? dirac::kExitOk : dirac::kExitConfig;
  }

  dirac::RunConfig cfg;
  try {
    cfg = dirac::load_config(config_path);
  } catch (const dirac::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return dirac::kExitConfig;
  }
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (h_override > 0.0) cfg.h_list = {h_override};

  dirac::CommandContext ctx;
  ctx.quiet = quiet;
  try {
    if (spectrum->parsed()) return dirac::cmd_spectrum(cfg, ctx);
    if (bounds->parsed()) return dirac::cmd_bounds(cfg, ctx);
    if (sweep->parsed()) return dirac::cmd_sweep(cfg, ctx);
    if (oracle->parsed()) return dirac::cmd_oracle(cfg, ctx);
    if (check->parsed()) return dirac::cmd_check(cfg, ctx);
  } catch (const dirac::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dirac::kExitIntegration;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dirac::kExitConfig;
  }
  return dirac::kExitConfig;
}
