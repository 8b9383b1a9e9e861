#include "epigame/run.hpp"

#include <filesystem>
#include <nlohmann/json.hpp>
#include <sstream>

#include "epigame/ctmc.hpp"
#include "epigame/dynamics.hpp"
#include "epigame/metrics.hpp"
#include "epigame/network_io.hpp"
#include "epigame/report.hpp"
#include "epigame/solvers.hpp"

namespace epigame {

using nlohmann::json;

std::optional<Command> command_from_string(const std::string& s) {
  if (s == "simulate") return Command::Simulate;
  if (s == "equilibrium") return Command::Equilibrium;
  if (s == "optimum") return Command::Optimum;
  if (s == "poa") return Command::Poa;
  if (s == "pok") return Command::Pok;
  if (s == "policy") return Command::Policy;
  return std::nullopt;
}

namespace {

const char* command_name(Command c) {
  switch (c) {
    case Command::Simulate: return "simulate";
    case Command::Equilibrium: return "equilibrium";
    case Command::Optimum: return "optimum";
    case Command::Poa: return "poa";
    case Command::Pok: return "pok";
    case Command::Policy: return "policy";
  }
  return "?";
}

std::string human_text(const json& j, int indent = 0) {
  std::ostringstream out;
  const std::string pad(indent, ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      out << pad << it.key() << ":\n" << human_text(*it, indent + 2);
    } else if (it->is_number_float()) {
      out << pad << it.key() << " = " << format_double(it->get<double>()) << "\n";
    } else {
      out << pad << it.key() << " = " << it->dump() << "\n";
    }
  }
  return out.str();
}

void write_reports(const ExperimentConfig& cfg, Command cmd, const json& body) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  json root;
  root["command"] = command_name(cmd);
  root["config"] = resolved_config_text(cfg);
  root["results"] = body;
  const std::string base = (fs::path(cfg.out_dir) / command_name(cmd)).string();
  write_text_file(base + "_report.json", dump_report(root));
  write_text_file(base + "_report.txt",
                  std::string("epigame ") + command_name(cmd) + " report\n\n" + human_text(root));
}

json sandwich_csv(const ExperimentConfig& cfg, const Trajectory& mean_field,
                  const UpperBoundTrajectories& upper, const Trajectory& linearized) {
  std::ostringstream csv;
  const int n = cfg.n;
  csv << "t";
  for (int i = 1; i <= n; ++i) csv << ",xbar_" << i;
  for (int i = 1; i <= n; ++i) csv << ",xcheck_" << i;
  for (int i = 1; i <= n; ++i) csv << ",xtilde_" << i;
  csv << "\n";
  for (size_t g = 0; g < mean_field.times.size(); ++g) {
    csv << format_double(mean_field.times[g]);
    for (int i = 0; i < n; ++i) csv << "," << format_double(mean_field.values[g][i]);
    for (int i = 0; i < n; ++i) csv << "," << format_double(upper.x.values[g][i]);
    for (int i = 0; i < n; ++i) csv << "," << format_double(linearized.values[g][i]);
    csv << "\n";
  }
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  write_text_file((fs::path(cfg.out_dir) / "trajectories.csv").string(), csv.str());
  return json("trajectories.csv");  // sibling of the report
}

int run_simulate(const ExperimentConfig& cfg) {
  const Trajectory mf = integrate_mean_field(cfg.net, cfg.game.epi, cfg.grid);
  const UpperBoundTrajectories ub = closed_form_upper_bound(cfg.net, cfg.game.epi, cfg.grid);
  const Trajectory lin = linearized_solution(cfg.net, cfg.game.epi, cfg.grid);

  json body;
  body["trajectories_csv"] = sandwich_csv(cfg, mf, ub, lin);
  json final_values;
  final_values["mean_field"] = std::vector<double>(mf.values.back().begin(), mf.values.back().end());
  final_values["upper_bound"] =
      std::vector<double>(ub.x.values.back().begin(), ub.x.values.back().end());
  final_values["linearized"] =
      std::vector<double>(lin.values.back().begin(), lin.values.back().end());
  body["final"] = final_values;

  const SimulationResult sim = simulate_exact_ctmc(cfg.net, cfg.game.epi, cfg.samples, cfg.seed);
  json mc;
  mc["estimate"] = std::vector<double>(sim.estimate.begin(), sim.estimate.end());
  mc["std_error"] = std::vector<double>(sim.std_error.begin(), sim.std_error.end());
  mc["samples"] = sim.samples;
  mc["seed"] = sim.seed;
  body["monte_carlo"] = mc;
  if (cfg.n <= kKolmogorovMaxNodes) {
    const Eigen::VectorXd exact = solve_exact_kolmogorov(cfg.net, cfg.game.epi);
    body["kolmogorov"] = std::vector<double>(exact.begin(), exact.end());
  }
  write_reports(cfg, Command::Simulate, body);
  return kExitOk;
}

int run_equilibrium(const ExperimentConfig& cfg) {
  MultiStartResult ms;
  try {
    ms = multi_start_equilibria(cfg.net, cfg.game, cfg.multistart, cfg.seed);
  } catch (const std::runtime_error& e) {
    json body;
    body["converged"] = false;
    body["error"] = e.what();
    write_reports(cfg, Command::Equilibrium, body);
    return kExitNoConvergence;
  }
  json body;
  body["worst"] = equilibrium_to_json(ms.worst);
  body["best"] = equilibrium_to_json(ms.best);
  body["worst_welfare"] = ms.worst_welfare;
  body["best_welfare"] = ms.best_welfare;
  body["runs"] = ms.runs;
  body["verified"] = ms.verified;
  body["seed"] = cfg.seed;
  write_reports(cfg, Command::Equilibrium, body);
  return ms.worst.converged && ms.best.converged ? kExitOk : kExitNoConvergence;
}

int run_optimum(const ExperimentConfig& cfg) {
  const OptimumReport opt = social_optimum(cfg.net, cfg.game);
  json body;
  body["optimum"] = optimum_to_json(opt);
  body["welfare"] = social_welfare(cfg.net, opt.aggregate, cfg.game);
  write_reports(cfg, Command::Optimum, body);
  return opt.converged ? kExitOk : kExitNoConvergence;
}

int run_poa(const ExperimentConfig& cfg) {
  WelfareMetrics metrics;
  try {
    metrics = price_of_anarchy(cfg.net, cfg.game, cfg.multistart, cfg.seed);
  } catch (const std::runtime_error& e) {
    json body;
    body["converged"] = false;
    body["error"] = e.what();
    write_reports(cfg, Command::Poa, body);
    return kExitNoConvergence;
  }
  json body;
  body["degenerate"] = metrics.degenerate;
  body["provenance"] = metrics.provenance;
  if (!metrics.degenerate) {
    body["welfare_worst"] = metrics.welfare_worst;
    body["welfare_optimum"] = metrics.welfare_optimum;
    body["poa"] = metrics.poa;
    body["worst_found_caveat"] = metrics.worst_found_caveat;
    const MultiStartResult ms =
        multi_start_equilibria(cfg.net, cfg.game, cfg.multistart, cfg.seed);
    const OptimumReport opt = social_optimum(cfg.net, cfg.game);
    try {
      const PoaBounds bounds = cfg.game.mode == GameMode::Global
                                   ? poa_bound_global(cfg.net, cfg.game, ms.worst, opt)
                                   : poa_bound_local(cfg.net, cfg.game, ms.worst, opt);
      json jb;
      jb["bound1"] = bounds.bound1;
      jb["bound2"] = bounds.bound2;
      if (!bounds.k_values.empty()) {
        jb["k_values"] = bounds.k_values;
        jb["sandwich_violation"] = bounds.sandwich_violation;
      }
      body["bounds"] = jb;
      body["bounds_hypotheses"] = "satisfied";
    } catch (const std::invalid_argument& e) {
      body["bounds_hypotheses"] = e.what();
    }
  }
  write_reports(cfg, Command::Poa, body);
  return kExitOk;
}

int run_pok(const ExperimentConfig& cfg) {
  json body;
  try {
    const PokResult pok = price_of_autarky(cfg.net, cfg.game, cfg.multistart, cfg.seed);
    body["pok"] = pok.pok;
    body["bound"] = pok.bound;
    body["bound_fallback"] = pok.bound_fallback;
    body["identity_residual"] = pok.identity_residual;
    body["welfare_worst_local"] = pok.welfare_worst_local;
    body["welfare_best_global"] = pok.welfare_best_global;
    body["hypotheses"] = "satisfied";
  } catch (const std::invalid_argument& e) {
    body["hypotheses"] = e.what();
  } catch (const std::runtime_error& e) {
    body["converged"] = false;
    body["error"] = e.what();
    write_reports(cfg, Command::Pok, body);
    return kExitNoConvergence;
  }
  write_reports(cfg, Command::Pok, body);
  return kExitOk;
}

int run_policy(const ExperimentConfig& cfg) {
  json body;
  std::ostringstream csv;
  csv << "kappa,welfare\n";
  const double kappa_max = cfg.net.weights.rowwise().sum().minCoeff();
  const int sweep = std::max(cfg.grid >= 64 ? 64 : cfg.grid, 4);
  for (int g = 0; g < sweep; ++g) {
    const double k = kappa_max * g / (sweep - 1.0);
    csv << format_double(k) << "," << format_double(evaluate_policy(cfg.net, k, cfg.game))
        << "\n";
  }
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  write_text_file((fs::path(cfg.out_dir) / "policy_sweep.csv").string(), csv.str());
  body["sweep_csv"] = "policy_sweep.csv";

  if (cfg.kappa >= 0.0) {
    body["kappa"] = cfg.kappa;
    body["welfare"] = evaluate_policy(cfg.net, cfg.kappa, cfg.game);
  } else {
    const OptimalKappa ok = optimal_kappa(cfg.net, cfg.game);
    body["kappa"] = ok.kappa;
    body["welfare"] = ok.welfare;
    body["epsilon_gap"] = ok.epsilon_gap;
  }
  write_reports(cfg, Command::Policy, body);
  return kExitOk;
}

}  // namespace

int run_command(const ExperimentConfig& cfg, Command cmd) {
  switch (cmd) {
    case Command::Simulate: return run_simulate(cfg);
    case Command::Equilibrium: return run_equilibrium(cfg);
    case Command::Optimum: return run_optimum(cfg);
    case Command::Poa: return run_poa(cfg);
    case Command::Pok: return run_pok(cfg);
    case Command::Policy: return run_policy(cfg);
  }
  return kExitBadInput;
}

}  // namespace epigame
