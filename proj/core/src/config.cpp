#include "epigame/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "epigame/network_io.hpp"

namespace epigame {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_number_list(const std::string& value, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell = trim(cell);
    if (cell.empty()) continue;
    try {
      size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw std::invalid_argument("config: bad number for key '" + key + "': " + cell);
    }
  }
  if (out.empty()) throw std::invalid_argument("config: empty value for key '" + key + "'");
  return out;
}

double parse_number(const std::string& value, const std::string& key) {
  const auto v = parse_number_list(value, key);
  if (v.size() != 1) throw std::invalid_argument("config: expected a scalar for key '" + key + "'");
  return v[0];
}

std::vector<double> broadcast(std::vector<double> v, int n, const std::string& key) {
  if (static_cast<int>(v.size()) == n) return v;
  if (v.size() == 1) return std::vector<double>(n, v[0]);
  throw std::invalid_argument("config: key '" + key + "' needs 1 or " + std::to_string(n) +
                              " values, got " + std::to_string(v.size()));
}

const std::set<std::string> kKnownKeys = {
    "network", "n",    "a",          "delta", "beta", "t_bar", "x0",  "rho",
    "mode",    "samples", "seed",    "multistart", "grid", "kappa", "out"};

}  // namespace

ExperimentConfig parse_config(const std::string& text, bool strict) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config: line " + std::to_string(lineno) + " is malformed");
    if (strict && kKnownKeys.find(key) == kKnownKeys.end())
      throw std::invalid_argument("config: unknown key '" + key + "'");
    kv[key] = value;
  }

  ExperimentConfig cfg;
  auto take = [&](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };

  const auto network = take("network");
  if (!network) throw std::invalid_argument("config: missing required key 'network'");
  cfg.network = *network;

  const bool builtin =
      cfg.network == "complete" || cfg.network == "cycle" || cfg.network == "star";
  if (builtin) {
    const auto n = take("n");
    if (!n) throw std::invalid_argument("config: missing required key 'n'");
    cfg.n = static_cast<int>(parse_number(*n, "n"));
    if (auto a = take("a")) cfg.a = parse_number(*a, "a");
    if (cfg.network == "complete")
      cfg.net = complete_network(cfg.n, cfg.a);
    else if (cfg.network == "cycle")
      cfg.net = cycle_network(cfg.n, cfg.a);
    else
      cfg.net = star_network(cfg.n, cfg.a);
  } else {
    cfg.net = load_network(cfg.network);
    cfg.n = cfg.net.n;
  }

  const auto rho = take("rho");
  if (!rho) throw std::invalid_argument("config: missing required key 'rho'");
  cfg.rho = parse_number(*rho, "rho");
  if (auto beta = take("beta")) cfg.beta = parse_number(*beta, "beta");
  if (auto t_bar = take("t_bar")) cfg.t_bar = parse_number(*t_bar, "t_bar");

  cfg.delta = broadcast(take("delta") ? parse_number_list(*take("delta"), "delta")
                                      : std::vector<double>{1.0},
                        cfg.n, "delta");
  cfg.x0 = broadcast(take("x0") ? parse_number_list(*take("x0"), "x0")
                                : std::vector<double>{0.5},
                     cfg.n, "x0");

  if (auto mode = take("mode")) {
    if (*mode == "local")
      cfg.mode = GameMode::Local;
    else if (*mode == "global")
      cfg.mode = GameMode::Global;
    else
      throw std::invalid_argument("config: mode must be 'local' or 'global'");
  }
  if (auto samples = take("samples")) cfg.samples = static_cast<int>(parse_number(*samples, "samples"));
  if (auto seed = take("seed")) {
    cfg.seed = static_cast<std::uint64_t>(parse_number(*seed, "seed"));
    cfg.seed_set = true;
  }
  if (auto ms = take("multistart")) cfg.multistart = static_cast<int>(parse_number(*ms, "multistart"));
  if (auto grid = take("grid")) cfg.grid = static_cast<int>(parse_number(*grid, "grid"));
  if (auto kappa = take("kappa")) cfg.kappa = parse_number(*kappa, "kappa");
  if (auto out = take("out")) cfg.out_dir = *out;

  if (cfg.samples < 1) throw std::invalid_argument("config: samples must be >= 1");
  if (cfg.grid < 2) throw std::invalid_argument("config: grid must be >= 2");
  if (cfg.multistart < 0) throw std::invalid_argument("config: multistart must be >= 0");

  cfg.game.delta = Eigen::Map<const Eigen::VectorXd>(cfg.delta.data(), cfg.n);
  cfg.game.epi.beta = cfg.beta;
  cfg.game.epi.t_bar = cfg.t_bar;
  cfg.game.epi.x0 = Eigen::Map<const Eigen::VectorXd>(cfg.x0.data(), cfg.n);
  cfg.game.rho = cfg.rho;
  cfg.game.mode = cfg.mode;
  validate_game(cfg.game, cfg.n);
  return cfg;
}

ExperimentConfig load_config(const std::string& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), strict);
}

std::string resolved_config_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += format_double(v[i]);
    }
    return s;
  };
  out << "network = " << cfg.network << "\n";
  out << "n = " << cfg.n << "\n";
  if (cfg.network == "complete" || cfg.network == "cycle" || cfg.network == "star")
    out << "a = " << format_double(cfg.a) << "\n";
  out << "delta = " << list(cfg.delta) << "\n";
  out << "beta = " << format_double(cfg.beta) << "\n";
  out << "t_bar = " << format_double(cfg.t_bar) << "\n";
  out << "x0 = " << list(cfg.x0) << "\n";
  out << "rho = " << format_double(cfg.rho) << "\n";
  out << "mode = " << (cfg.mode == GameMode::Local ? "local" : "global") << "\n";
  out << "samples = " << cfg.samples << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "multistart = " << cfg.multistart << "\n";
  out << "grid = " << cfg.grid << "\n";
  if (cfg.kappa >= 0.0) out << "kappa = " << format_double(cfg.kappa) << "\n";
  return out.str();
}

}  // namespace epigame
