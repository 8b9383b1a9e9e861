#pragma once

#include <iosfwd>
#include <string>

#include "epigame/network.hpp"

namespace epigame {

// Edge-list format: first line "n <count>", then one line "i j weight" per
// undirected edge with 0-based i < j. Weights are written with 17 significant
// digits so write(read(write(x))) is byte-identical.

Network read_network_edges(std::istream& in);
void write_network_edges(std::ostream& out, const Network& net);

// Dense CSV alternative: n lines of n comma-separated weights.
Network read_network_csv(std::istream& in);
void write_network_csv(std::ostream& out, const Network& net);

Network load_network(const std::string& path);  // dispatches on .csv extension
void save_network_edges(const std::string& path, const Network& net);
void save_network_csv(const std::string& path, const Network& net);

/// Lossless text form of a double (17 significant digits).
std::string format_double(double v);

}  // namespace epigame
