#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fragsim/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fragsim: decay-fragmentation scenario runner"};
  app.require_subcommand(1);

  fragsim::RunOptions opts;
  std::string out_dir;
  double rtol = 0.0, atol = 0.0, t_end = 0.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_dir, "output directory (default: ./results/<name>)");
    cmd->add_option("--rtol", rtol, "override integrator relative tolerance");
    cmd->add_option("--atol", atol, "override integrator absolute tolerance");
    cmd->add_option("--t-end", t_end, "override integration end time");
    cmd->add_flag("--dump-generator", opts.dump_generator,
                  "write the dense generator matrix to generator.txt");
  };

  std::string scenario_path;
  auto* run = app.add_subcommand("run", "run a single scenario file");
  run->add_option("file", scenario_path, "scenario JSON file")->required();
  add_common(run);

  std::string scenario_dir;
  auto* run_all = app.add_subcommand("run-all", "run every scenario in a directory");
  run_all->add_option("dir", scenario_dir, "directory of scenario JSON files")->required();
  add_common(run_all);

  CLI11_PARSE(app, argc, argv);

  if (!out_dir.empty()) opts.out_dir = out_dir;
  if (rtol > 0.0) opts.rtol = rtol;
  if (atol > 0.0) opts.atol = atol;
  if (t_end > 0.0) opts.t_end = t_end;

  try {
    if (run->parsed()) {
      const auto outcome = fragsim::run_scenario(scenario_path, opts);
      if (outcome.status != fragsim::kExitOk) {
        std::cerr << "error: " << outcome.error << "\n";
      } else {
        std::cout << "wrote results to " << outcome.out_dir << "\n";
      }
      return outcome.status;
    }
    return fragsim::run_all(scenario_dir, opts, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
