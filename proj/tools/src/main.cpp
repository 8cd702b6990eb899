#include <CLI11.hpp>

#include <iostream>

#include "liddi/version.hpp"
#include "liddi_app/runner.hpp"

int main(int argc, char** argv) {
  using namespace liddi::app;
  CLI::App app{
      "Laser-induced dipole-dipole interaction between two driven two-level atoms.\n"
      "Units: hbar = eps0 = c = 1; frequencies, energies and rates share one angular-frequency\n"
      "unit and positions are measured so that |k| = omega."};
  app.set_version_flag("--version", liddi::kVersion);
  std::string config;
  std::string task, out;
  int threads = 0;
  app.add_option("config", config, "Configuration file")->required();
  app.add_option("--task", task, "Override the configured task")
      ->check(CLI::IsMember({"potential", "steady", "evolve", "scatter", "rddi", "validate"}));
  app.add_option("--out", out, "Output path; '-' writes to stdout");
  app.add_option("--threads", threads, "Worker threads for sweeps; 0 uses every core, and LIDDI_THREADS caps the count")
      ->check(CLI::NonNegativeNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  RunOptions opt;
  if (!task.empty()) opt.task = parse_task(task);
  if (!out.empty()) opt.out = out;
  opt.threads = threads;
  try {
    return run(load_document(config), opt, std::cout, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
