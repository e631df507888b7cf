#include <iostream>

#include <CLI11.hpp>

#include "fsb/errors.hpp"
#include "fsb/runner.hpp"

int main(int argc, char **argv) {
  CLI::App app{"Free-surface potential flow blow-up simulator"};
  app.require_subcommand(1);
  bool quiet = false;
  std::string out_dir;
  app.add_flag("--quiet", quiet, "Suppress progress output");
  app.add_option("--out", out_dir, "Output directory (overrides output_dir in the config)");

  std::string config_path, run_dir;
  auto *sim = app.add_subcommand("simulate", "Run a simulation and write diagnostics");
  sim->add_option("--config", config_path, "JSON config file")->required();
  auto *val = app.add_subcommand("validate-bem", "BEM convergence check against analytic modes");
  val->add_option("--config", config_path, "JSON config file")->required();
  auto *ver = app.add_subcommand("verify-identities", "Re-check a run directory from its CSV files");
  ver->add_option("--run", run_dir, "Run directory")->required();

  // Options after the subcommand name are accepted too.
  for (auto *sub : {sim, val, ver}) {
    sub->add_flag("--quiet", quiet, "Suppress progress output");
    sub->add_option("--out", out_dir, "Output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? fsb::kExitOk : fsb::kExitBadInput;
  }

  try {
    if (*ver) return fsb::verify_identities(run_dir, std::cout);
    fsb::RunConfig cfg = fsb::load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (*val) return fsb::validate_bem(cfg, std::cout);
    return fsb::simulate(cfg, cfg.output_dir, std::cerr, quiet);
  } catch (const fsb::ArgumentError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return fsb::kExitBadInput;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return fsb::kExitSolverFailure;
  }
}
