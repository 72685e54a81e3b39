#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypopinn/experiment.hpp"

using namespace hypopinn;

int main(int argc, char** argv) {
  CLI::App app{"HypoPINN: eikonal-constrained hypocenter localization with Laplace UQ"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string in_dir;
  std::uint64_t seed_override = 0;
  bool seed_given = false;
  int refine = 1;
  std::vector<std::string> scheme_names = {"kaiming_normal", "kaiming_uniform", "xavier_normal",
                                           "xavier_uniform"};

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config file")->required();
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--seed", seed_override, "override the master seed")
        ->each([&](const std::string&) { seed_given = true; });
  };

  CLI::App* cmd_experiment = app.add_subcommand("experiment", "full pipeline: train, Laplace, cloud");
  add_common(cmd_experiment);
  CLI::App* cmd_train = app.add_subcommand("train", "training stage only");
  add_common(cmd_train);
  CLI::App* cmd_laplace = app.add_subcommand("laplace", "Laplace stage on a trained directory");
  add_common(cmd_laplace);
  cmd_laplace->add_option("--in", in_dir, "directory with map_params checkpoints")->required();
  CLI::App* cmd_init = app.add_subcommand("init-study", "compare weight initializers");
  add_common(cmd_init);
  cmd_init->add_option("--schemes", scheme_names, "initializer schemes to compare");
  CLI::App* cmd_forward = app.add_subcommand("forward", "oracle fields and observations only");
  add_common(cmd_forward);
  cmd_forward->add_option("--refine", refine, "also solve on a refine-x finer grid");

  CLI11_PARSE(app, argc, argv);

  ExperimentConfig cfg;
  try {
    cfg = ExperimentConfig::from_file(config_path);
    if (seed_given) cfg.set_master_seed(seed_override);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    if (cmd_experiment->parsed()) return run_experiment(cfg, out_dir);
    if (cmd_train->parsed()) return run_train(cfg, out_dir);
    if (cmd_laplace->parsed()) return run_laplace(cfg, in_dir, out_dir);
    if (cmd_forward->parsed()) return run_forward(cfg, out_dir, refine);
    if (cmd_init->parsed()) {
      std::vector<InitScheme> schemes;
      for (const auto& name : scheme_names) schemes.push_back(init_scheme_from_string(name));
      return run_init_study(cfg, schemes, out_dir);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
  return kExitConfigError;
}
