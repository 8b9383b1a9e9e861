#include "epigame/network_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace epigame {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Network read_network_edges(std::istream& in) {
  std::string tag;
  int n = 0;
  if (!(in >> tag >> n) || tag != "n")
    throw std::invalid_argument("edge list: expected header 'n <count>'");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  int i, j;
  double weight;
  while (in >> i >> j >> weight) {
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw std::invalid_argument("edge list: node index out of range");
    w(i, j) = weight;
    w(j, i) = weight;
  }
  return validate_network(w);
}

void write_network_edges(std::ostream& out, const Network& net) {
  out << "n " << net.n << "\n";
  for (const auto& [k, l] : net.edges())
    out << k << " " << l << " " << format_double(net.weights(k, l)) << "\n";
}

Network read_network_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  Eigen::MatrixXd w(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw std::invalid_argument("csv network: ragged rows");
    for (int j = 0; j < n; ++j) w(i, j) = rows[i][j];
  }
  return validate_network(w);
}

void write_network_csv(std::ostream& out, const Network& net) {
  for (int i = 0; i < net.n; ++i) {
    for (int j = 0; j < net.n; ++j) {
      if (j) out << ",";
      out << format_double(net.weights(i, j));
    }
    out << "\n";
  }
}

static bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Network load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open network file: " + path);
  if (ends_with(path, ".csv")) return read_network_csv(in);
  return read_network_edges(in);
}

void save_network_edges(const std::string& path, const Network& net) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_network_edges(out, net);
}

void save_network_csv(const std::string& path, const Network& net) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_network_csv(out, net);
}

}  // namespace epigame
