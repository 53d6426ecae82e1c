#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace polya {

// Nodes are 0-based internally. Every file format and JSON output uses
// 1-based ids; conversion happens at the I/O boundary only.
using NodeId = std::size_t;
using Edge = std::pair<NodeId, NodeId>;

/// Undirected simple graph with precomputed open and closed neighborhoods.
///
/// The type itself admits disconnected graphs (the game solver is exercised on
/// disjoint dyads); the file loaders reject them unless asked to keep the
/// largest component, and analyses that need distances check connectivity.
class Network {
 public:
  Network() = default;

  // Throws polya::Error on self-loops or out-of-range endpoints. Duplicate
  // edges (in either orientation) are merged.
  Network(std::size_t node_count, std::span<const Edge> edges);

  std::size_t size() const noexcept { return neighbors_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  // Sorted, excludes the node itself.
  std::span<const NodeId> neighbors(NodeId i) const { return neighbors_[i]; }
  // Sorted, includes the node itself.
  std::span<const NodeId> closed_neighborhood(NodeId i) const {
    return closed_[i];
  }
  std::size_t degree(NodeId i) const { return neighbors_[i].size(); }

  bool adjacent(NodeId i, NodeId j) const;

  // Edges with first < second, sorted lexicographically.
  std::vector<Edge> edges() const;

  std::vector<std::vector<NodeId>> connected_components() const;
  bool is_connected() const;

  // Induced subgraph on `nodes` (sorted), relabelled 0..k-1 in that order.
  Network induced_subgraph(std::span<const NodeId> nodes) const;

  friend bool operator==(const Network& a, const Network& b) {
    return a.neighbors_ == b.neighbors_;
  }

 private:
  std::vector<std::vector<NodeId>> neighbors_;
  std::vector<std::vector<NodeId>> closed_;
  std::size_t edge_count_ = 0;
};

// Common small graphs. Nodes are numbered along the path / cycle, the star
// center is node 0.
Network path_graph(std::size_t n);
Network cycle_graph(std::size_t n);
Network complete_graph(std::size_t n);
Network star_graph(std::size_t leaves);

}  // namespace polya
