#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "polya/network.hpp"

namespace polya {

enum class NetworkFormat {
  kAuto,             // decide from the file extension
  kAdjacencyMatrix,  // "N" on line 1, then N rows of 0/1
  kEdgeList,         // one "i j" pair per line, 1-indexed
};

struct LoadOptions {
  NetworkFormat format = NetworkFormat::kAuto;
  // Keep only the largest connected component (ties: the one holding the
  // smallest node id) instead of rejecting a disconnected graph.
  bool largest_component = false;
};

// Parsers only check syntax and symmetry; connectivity is enforced by
// load_network / require_connected.
Network parse_adjacency_matrix(std::string_view text);
Network parse_edge_list(std::string_view text);

// Throws DisconnectedGraphError listing the components.
void require_connected(const Network& net);

// Reads, parses and validates a network file.
Network load_network(const std::filesystem::path& path,
                     const LoadOptions& options = {});
Network load_network_text(std::string_view text, NetworkFormat format,
                          bool largest_component = false);

NetworkFormat format_from_extension(const std::filesystem::path& path);

void write_adjacency_matrix(std::ostream& os, const Network& net);
void write_edge_list(std::ostream& os, const Network& net);

}  // namespace polya
