#include "epigame/report.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "epigame/network_io.hpp"

namespace epigame {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  const int rows = static_cast<int>(j.size());
  const int cols = rows ? static_cast<int>(j.at(0).size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) m(i, k) = j.at(i).at(k).get<double>();
  return m;
}

json profile_to_json(const StrategyProfile& profile) {
  json agents = json::array();
  for (const auto& d : profile.per_agent) agents.push_back(matrix_to_json(d));
  return agents;
}

StrategyProfile profile_from_json(const json& j) {
  StrategyProfile p;
  for (const auto& m : j) p.per_agent.push_back(matrix_from_json(m));
  return p;
}

namespace {

json cases_to_json(const std::map<Link, LinkCase>& cases) {
  json out = json::object();
  for (const auto& [link, c] : cases)
    out[std::to_string(link.first) + "-" + std::to_string(link.second)] = to_string(c);
  return out;
}

json eligible_to_json(const std::map<Link, std::vector<int>>& sets) {
  json out = json::object();
  for (const auto& [link, agents] : sets)
    out[std::to_string(link.first) + "-" + std::to_string(link.second)] = agents;
  return out;
}

}  // namespace

json equilibrium_to_json(const EquilibriumReport& eq) {
  json j;
  j["profile"] = profile_to_json(eq.profile);
  j["aggregate"] = matrix_to_json(eq.profile.total());
  j["kkt_residual"] = eq.kkt_residual;
  j["classification"] = to_string(eq.classification);
  j["per_link_cases"] = cases_to_json(eq.per_link_cases);
  j["eligible_sets"] = eligible_to_json(eq.eligible_sets);
  j["converged"] = eq.converged;
  j["oscillation"] = eq.oscillation;
  j["sweeps"] = eq.sweeps;
  j["order"] = eq.order;
  return j;
}

json optimum_to_json(const OptimumReport& opt) {
  json j;
  j["aggregate"] = matrix_to_json(opt.aggregate.total);
  j["kkt_residual"] = opt.kkt_residual;
  j["classification"] = to_string(opt.classification);
  j["per_link_cases"] = cases_to_json(opt.per_link_cases);
  j["converged"] = opt.converged;
  j["iterations"] = opt.iterations;
  return j;
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

json parse_report(const std::string& text) { return json::parse(text); }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace epigame
