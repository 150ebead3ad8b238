#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dampeuler/acceptance.hpp"
#include "dampeuler/config.hpp"
#include "dampeuler/error.hpp"
#include "dampeuler/harness.hpp"

namespace de = dampeuler;

namespace {

de::RunConfig load(const std::string& path, const std::string& out_dir) {
  de::RunConfig cfg = de::load_config(path);
  de::apply_env_overrides(cfg);
  if (!out_dir.empty()) cfg.output.directory = out_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Damped 1D compressible Euler simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;

  auto* run = app.add_subcommand("run", "Run one simulation from a config file");
  run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", out_dir, "Output directory (overrides config and environment)");

  std::vector<std::string> vary;
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::size_t max_runs = 256;
  auto* sweep = app.add_subcommand("sweep", "Run the cartesian product of parameter lists");
  sweep->add_option("config", config_path, "Base config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--vary", vary, "key=v1,v2,... with key in mu, lambda, epsilon, law")
      ->required()
      ->take_all();
  sweep->add_option("-j,--workers", workers, "Concurrent runs")->check(CLI::PositiveNumber);
  sweep->add_option("--max-runs", max_runs, "Cap on the number of runs");
  sweep->add_option("-o,--output", out_dir, "Output directory");

  std::string suite = "all";
  std::string fault;
  auto* check = app.add_subcommand("check", "Run an acceptance suite");
  check->add_option("suite", suite, "transform, energy, equivalence, residual, fps, blowup, "
                                    "kernels, invariants or all");
  check->add_option("--inject-fault", fault, "Deliberate fault for mutation testing")
      ->check(CLI::IsMember({"damping-sign"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : de::kExitError;
  }

  try {
    if (*run) {
      return de::cmd_run(load(config_path, out_dir), std::cout);
    }
    if (*sweep) {
      const de::RunConfig cfg = load(config_path, out_dir);
      for (const auto& n : cfg.notices) std::cout << n << '\n';
      return de::cmd_sweep(cfg, de::parse_sweep_axes(vary), {max_runs, workers}, std::cout);
    }
    de::AcceptanceOptions opts;
    opts.flip_damping_sign = fault == "damping-sign";
    return de::cmd_check(suite, std::cout, opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return de::kExitError;
  }
}
