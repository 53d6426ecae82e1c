#include "polya/graph_analysis.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "polya/error.hpp"
#include "polya/network_io.hpp"
#include "polya/random.hpp"

namespace polya {

Network generate_barabasi_albert(std::size_t node_count, std::size_t m,
                                 std::uint64_t seed) {
  if (m < 1 || m >= node_count) {
    throw Error("Barabasi-Albert generator needs 1 <= m < N (got m=" +
                std::to_string(m) + ", N=" + std::to_string(node_count) + ")");
  }
  std::vector<Edge> edges;
  // Every edge contributes both endpoints, so a uniform pick from this list
  // is a degree-proportional pick of a node.
  std::vector<NodeId> endpoints;
  for (NodeId i = 0; i <= m; ++i) {
    for (NodeId j = i + 1; j <= m; ++j) {
      edges.emplace_back(i, j);
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  }

  RandomStream rng(seed, 0);
  std::vector<NodeId> chosen;
  for (NodeId v = m + 1; v < node_count; ++v) {
    chosen.clear();
    while (chosen.size() < m) {
      NodeId u = endpoints[rng.below(endpoints.size())];
      if (std::find(chosen.begin(), chosen.end(), u) == chosen.end()) {
        chosen.push_back(u);
      }
    }
    for (NodeId u : chosen) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  return Network(node_count, edges);
}

bool strictly_nested(const Network& net, NodeId i, NodeId j) {
  if (i == j) return false;
  auto a = net.closed_neighborhood(i);
  auto b = net.closed_neighborhood(j);
  return a.size() < b.size() &&
         std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<NodeId> outer_nodes(const Network& net) {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < net.size(); ++i) {
    // A superset of N'_i contains i, so only neighbors can qualify.
    for (NodeId j : net.neighbors(i)) {
      if (strictly_nested(net, i, j)) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

std::vector<NodeId> inner_nodes(const Network& net) {
  auto outer = outer_nodes(net);
  std::vector<NodeId> all(net.size());
  std::iota(all.begin(), all.end(), NodeId{0});
  std::vector<NodeId> inner;
  std::set_difference(all.begin(), all.end(), outer.begin(), outer.end(),
                      std::back_inserter(inner));
  return inner;
}

std::vector<std::uint64_t> distance_sums(const Network& net) {
  require_connected(net);
  const std::size_t n = net.size();
  std::vector<std::uint64_t> sums(n, 0);
  std::vector<std::size_t> dist(n);
  std::vector<NodeId> queue(n);
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    std::size_t head = 0, tail = 0;
    queue[tail++] = s;
    dist[s] = 0;
    while (head < tail) {
      NodeId u = queue[head++];
      sums[s] += dist[u];
      for (NodeId v : net.neighbors(u)) {
        if (dist[v] == kUnseen) {
          dist[v] = dist[u] + 1;
          queue[tail++] = v;
        }
      }
    }
  }
  return sums;
}

std::vector<double> closeness_centrality(const Network& net) {
  auto sums = distance_sums(net);
  std::vector<double> c(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) {
    c[i] = sums[i] == 0 ? 1.0 : 1.0 / static_cast<double>(sums[i]);
  }
  return c;
}

std::string_view to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::kInnerNodes: return "inner-nodes";
    case TargetKind::kLayered: return "layered";
    case TargetKind::kDense: return "dense";
    case TargetKind::kDensePruned: return "dense-pruned";
    case TargetKind::kAll: return "all";
  }
  return "unknown";
}

bool TargetSet::contains(NodeId i) const {
  return std::binary_search(nodes.begin(), nodes.end(), i);
}

namespace {

TargetSet make_target_set(std::vector<NodeId> order, TargetKind kind) {
  TargetSet t;
  t.selection_order = order;
  t.nodes = std::move(order);
  std::sort(t.nodes.begin(), t.nodes.end());
  t.kind = kind;
  t.remainder_start = t.nodes.size();
  return t;
}

}  // namespace

TargetSet target_all(const Network& net) {
  std::vector<NodeId> all(net.size());
  std::iota(all.begin(), all.end(), NodeId{0});
  return make_target_set(std::move(all), TargetKind::kAll);
}

TargetSet target_inner(const Network& net) {
  return make_target_set(inner_nodes(net), TargetKind::kInnerNodes);
}

TargetSet target_set_layered(const Network& net) {
  const std::size_t n = net.size();
  std::vector<char> in_test(n, 1);
  std::size_t remaining = n;
  std::vector<NodeId> targets;
  std::size_t remainder_start = std::numeric_limits<std::size_t>::max();

  while (remaining > 0) {
    std::vector<char> is_outer(n, 0);
    bool any_outer = false;
    for (NodeId i = 0; i < n; ++i) {
      if (!in_test[i]) continue;
      for (NodeId j : net.neighbors(i)) {
        if (in_test[j] && strictly_nested(net, i, j)) {
          is_outer[i] = 1;
          any_outer = true;
          break;
        }
      }
    }

    if (!any_outer) {
      remainder_start = targets.size();
      for (NodeId i = 0; i < n; ++i) {
        if (in_test[i]) targets.push_back(i);
      }
      break;
    }

    std::vector<NodeId> added;
    for (NodeId i = 0; i < n; ++i) {
      if (!in_test[i] || is_outer[i]) continue;
      for (NodeId j : net.neighbors(i)) {
        if (in_test[j] && is_outer[j]) {
          added.push_back(i);
          break;
        }
      }
    }
    for (NodeId t : added) {
      targets.push_back(t);
      for (NodeId c : net.closed_neighborhood(t)) {
        if (in_test[c]) {
          in_test[c] = 0;
          --remaining;
        }
      }
    }
  }
  remainder_start = std::min(remainder_start, targets.size());
  auto out = make_target_set(std::move(targets), TargetKind::kLayered);
  out.remainder_start = remainder_start;
  return out;
}

bool covers(const Network& net, std::span<const NodeId> targets) {
  std::vector<char> covered(net.size(), 0);
  for (NodeId t : targets) {
    for (NodeId c : net.closed_neighborhood(t)) covered[c] = 1;
  }
  return std::all_of(covered.begin(), covered.end(),
                     [](char c) { return c != 0; });
}

TargetSet target_set_dense(const Network& net, bool prune) {
  const std::size_t n = net.size();
  // Descending closeness is ascending distance sum; comparing the integer
  // sums keeps ties exact.
  auto sums = distance_sums(net);
  std::vector<NodeId> ranking(n);
  std::iota(ranking.begin(), ranking.end(), NodeId{0});
  std::stable_sort(ranking.begin(), ranking.end(),
                   [&](NodeId a, NodeId b) { return sums[a] < sums[b]; });

  std::vector<std::size_t> cover_count(n, 0);
  std::size_t covered = 0;
  std::vector<NodeId> order;
  for (NodeId v : ranking) {
    if (covered == n) break;
    order.push_back(v);
    for (NodeId c : net.closed_neighborhood(v)) {
      if (cover_count[c]++ == 0) ++covered;
    }
  }

  if (prune) {
    std::vector<char> keep(order.size(), 1);
    for (std::size_t k = order.size(); k-- > 0;) {
      auto nb = net.closed_neighborhood(order[k]);
      bool removable = std::all_of(nb.begin(), nb.end(),
                                   [&](NodeId c) { return cover_count[c] > 1; });
      if (removable) {
        keep[k] = 0;
        for (NodeId c : nb) --cover_count[c];
      }
    }
    std::vector<NodeId> pruned;
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (keep[k]) pruned.push_back(order[k]);
    }
    return make_target_set(std::move(pruned), TargetKind::kDensePruned);
  }
  return make_target_set(std::move(order), TargetKind::kDense);
}

Permutation::Permutation(std::vector<NodeId> images) : images_(std::move(images)) {
  std::vector<char> hit(images_.size(), 0);
  for (NodeId v : images_) {
    if (v >= images_.size() || hit[v]) {
      throw Error("not a permutation of 1.." + std::to_string(images_.size()));
    }
    hit[v] = 1;
  }
}

std::vector<std::vector<NodeId>> Permutation::cycles() const {
  std::vector<std::vector<NodeId>> out;
  std::vector<char> seen(size(), 0);
  for (NodeId start = 0; start < size(); ++start) {
    if (seen[start]) continue;
    std::vector<NodeId> cycle;
    for (NodeId v = start; !seen[v]; v = images_[v]) {
      seen[v] = 1;
      cycle.push_back(v);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::uint64_t Permutation::order() const {
  std::uint64_t m = 1;
  for (const auto& c : cycles()) m = std::lcm(m, std::uint64_t{c.size()});
  return m;
}

AutomorphismCheck verify_automorphism(const Network& net,
                                      const Permutation& sigma) {
  if (sigma.size() != net.size()) {
    throw Error("permutation size " + std::to_string(sigma.size()) +
                " does not match network size " + std::to_string(net.size()));
  }
  AutomorphismCheck result;
  // sigma is a bijection, so mapping every edge onto an edge already forces
  // the edge sets to coincide (equal cardinality).
  for (const auto& [u, v] : net.edges()) {
    if (!net.adjacent(sigma(u), sigma(v))) return result;
  }
  result.is_automorphism = true;
  result.orbits = sigma.cycles();
  result.order = sigma.order();
  return result;
}

std::vector<double> orbit_average(const Permutation& sigma,
                                  std::span<const double> values) {
  if (values.size() != sigma.size()) {
    throw Error("orbit_average: size mismatch");
  }
  std::vector<double> out(values.size());
  for (const auto& cycle : sigma.cycles()) {
    double sum = 0.0;
    for (NodeId v : cycle) sum += values[v];
    const double mean = sum / static_cast<double>(cycle.size());
    for (NodeId v : cycle) out[v] = mean;
  }
  return out;
}

}  // namespace polya
