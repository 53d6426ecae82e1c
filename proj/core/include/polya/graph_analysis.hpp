#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "polya/network.hpp"

namespace polya {

/// Preferential attachment: a seed clique on m+1 nodes, then every new node
/// links to m distinct existing nodes chosen with probability proportional to
/// degree. Produces m(m+1)/2 + (N-m-1)m edges, so (100, 1) gives the 99-edge
/// tree and (100, 10) gives 945 edges.
Network generate_barabasi_albert(std::size_t node_count, std::size_t m,
                                 std::uint64_t seed);

// Strict nesting of closed neighborhoods: N'_i is a proper subset of N'_j.
bool strictly_nested(const Network& net, NodeId i, NodeId j);

// Nodes whose closed neighborhood is strictly nested in another node's.
std::vector<NodeId> outer_nodes(const Network& net);
// Complement of outer_nodes; never empty for N >= 1.
std::vector<NodeId> inner_nodes(const Network& net);

// Sum of BFS distances from each node. Throws DisconnectedGraphError.
std::vector<std::uint64_t> distance_sums(const Network& net);

// C_i = 1 / sum_j d(i, j). A single-node network has no distances; its one
// node gets closeness 1.
std::vector<double> closeness_centrality(const Network& net);

enum class TargetKind { kInnerNodes, kLayered, kDense, kDensePruned, kAll };

std::string_view to_string(TargetKind kind);

struct TargetSet {
  std::vector<NodeId> nodes;            // sorted
  std::vector<NodeId> selection_order;  // same members, in the order chosen
  TargetKind kind = TargetKind::kAll;
  // Layered sets only: selection_order[remainder_start..] were taken wholesale
  // when no outer node was left in the test set.
  std::size_t remainder_start = 0;

  bool contains(NodeId i) const;
};

TargetSet target_all(const Network& net);
TargetSet target_inner(const Network& net);

// Peels outer nodes layer by layer, targeting the inner nodes adjacent to
// them, until every node is covered.
TargetSet target_set_layered(const Network& net);

// Adds nodes in descending closeness (ties by ascending id) until their closed
// neighborhoods cover V; with `prune`, drops members in reverse insertion order
// whenever coverage survives the removal.
TargetSet target_set_dense(const Network& net, bool prune);

// Every node has a member of `targets` in its closed neighborhood.
bool covers(const Network& net, std::span<const NodeId> targets);

/// A permutation of the node set, stored as images: image[i] = sigma(i).
class Permutation {
 public:
  // Throws polya::Error if `images` is not a bijection on 0..n-1.
  explicit Permutation(std::vector<NodeId> images);

  std::size_t size() const noexcept { return images_.size(); }
  NodeId operator()(NodeId i) const { return images_[i]; }
  std::span<const NodeId> images() const noexcept { return images_; }

  // Cycles of sigma, each starting at its smallest element, ordered by it.
  std::vector<std::vector<NodeId>> cycles() const;
  // Order of the cyclic group <sigma> (lcm of cycle lengths).
  std::uint64_t order() const;

 private:
  std::vector<NodeId> images_;
};

struct AutomorphismCheck {
  bool is_automorphism = false;
  // Orbits of <sigma>; filled only when is_automorphism holds.
  std::vector<std::vector<NodeId>> orbits;
  std::uint64_t order = 0;
};

AutomorphismCheck verify_automorphism(const Network& net,
                                      const Permutation& sigma);

// B*_i = (1/m) sum_{j=1..m} B_{sigma^j(i)}, i.e. the mean of B over the cycle
// of sigma containing i.
std::vector<double> orbit_average(const Permutation& sigma,
                                  std::span<const double> values);

}  // namespace polya
