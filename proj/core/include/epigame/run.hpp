#pragma once

#include <string>

#include "epigame/config.hpp"

namespace epigame {

enum class Command { Simulate, Equilibrium, Optimum, Poa, Pok, Policy };

std::optional<Command> command_from_string(const std::string& s);

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 1;
inline constexpr int kExitNoConvergence = 2;

/// Runs one command against a resolved config, writing the machine report
/// (JSON), human report (text) and any CSV data into cfg.out_dir. Returns
/// kExitOk, or kExitNoConvergence when a solver failed to converge (the
/// report is still written). Input validation problems throw before any
/// file is produced; the CLI maps those to kExitBadInput.
int run_command(const ExperimentConfig& cfg, Command cmd);

}  // namespace epigame
