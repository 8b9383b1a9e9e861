#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "epigame/solvers.hpp"

namespace epigame {

// Machine reports are JSON with object keys in sorted order and all doubles
// rendered with 17 significant digits, so identical runs serialize to
// identical bytes. dump_report / parse_report round-trip exactly.

nlohmann::json profile_to_json(const StrategyProfile& profile);
StrategyProfile profile_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);

nlohmann::json equilibrium_to_json(const EquilibriumReport& eq);
nlohmann::json optimum_to_json(const OptimumReport& opt);

std::string dump_report(const nlohmann::json& j);
nlohmann::json parse_report(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace epigame
