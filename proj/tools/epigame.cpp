// Batch front end: epigame <command> --config PATH [--seed U64] [--out DIR] [--strict]
#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>

#include "epigame/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"SI-epidemic contagion and prophylactic-investment games on weighted networks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool strict = false;

  const std::vector<std::string> names = {"simulate", "equilibrium", "optimum",
                                          "poa",      "pok",         "policy"};
  for (const auto& name : names) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment configuration file")->required();
    sub->add_option("--seed", seed, "override the config seed")->each([&](const std::string&) {
      seed_given = true;
    });
    sub->add_option("--out", out_dir, "output directory (default: from config or cwd)");
    sub->add_flag("--strict", strict, "reject unknown config keys");
  }

  CLI11_PARSE(app, argc, argv);

  const std::string cmd_name = app.get_subcommands().front()->get_name();
  try {
    epigame::ExperimentConfig cfg = epigame::load_config(config_path, strict);
    if (seed_given) {
      cfg.seed = seed;
      cfg.seed_set = true;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    const auto cmd = epigame::command_from_string(cmd_name);
    if (!cmd) return epigame::kExitBadInput;
    return epigame::run_command(cfg, *cmd);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return epigame::kExitBadInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return epigame::kExitNoConvergence;
  }
}
