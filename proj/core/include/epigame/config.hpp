#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epigame/game.hpp"
#include "epigame/network.hpp"

namespace epigame {

/// Parsed experiment configuration. The text format is one `key = value`
/// per line, '#' comments. Scalars broadcast to vectors where a per-node
/// quantity is expected.
struct ExperimentConfig {
  // network source: builtin generator or file path
  std::string network;      // "complete" | "cycle" | "star" | path
  int n = 0;                // builtin size
  double a = 1.0;           // builtin weight

  std::vector<double> delta;  // scalar broadcast allowed
  double beta = 1.0;
  double t_bar = 1.0;
  std::vector<double> x0;     // scalar broadcast allowed
  double rho = 1.0;
  GameMode mode = GameMode::Global;

  int samples = 100000;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int multistart = 8;
  int grid = 257;
  double kappa = -1.0;      // policy level; negative = search
  std::string out_dir = ".";

  // resolved at load time
  Network net;
  GameParams game;
};

/// Parses and validates; unknown keys are fatal in strict mode. Throws
/// std::invalid_argument with the offending key in the message.
ExperimentConfig parse_config(const std::string& text, bool strict = false);

ExperimentConfig load_config(const std::string& path, bool strict = false);

/// Canonical text form of the fully resolved configuration, suitable for
/// embedding in reports (reproducibility header).
std::string resolved_config_text(const ExperimentConfig& cfg);

}  // namespace epigame
