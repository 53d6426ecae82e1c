#include "polya/network.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "polya/error.hpp"

namespace polya {

Network::Network(std::size_t node_count, std::span<const Edge> edges)
    : neighbors_(node_count), closed_(node_count) {
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw Error("edge (" + std::to_string(u + 1) + ", " +
                  std::to_string(v + 1) + ") references a node outside 1.." +
                  std::to_string(node_count));
    }
    if (u == v) {
      throw Error("self-loop at node " + std::to_string(u + 1));
    }
    neighbors_[u].push_back(v);
    neighbors_[v].push_back(u);
  }
  for (NodeId i = 0; i < node_count; ++i) {
    auto& nb = neighbors_[i];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    edge_count_ += nb.size();

    auto& cl = closed_[i];
    cl = nb;
    cl.insert(std::lower_bound(cl.begin(), cl.end(), i), i);
  }
  edge_count_ /= 2;
}

bool Network::adjacent(NodeId i, NodeId j) const {
  const auto& nb = neighbors_[i];
  return std::binary_search(nb.begin(), nb.end(), j);
}

std::vector<Edge> Network::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId i = 0; i < size(); ++i) {
    for (NodeId j : neighbors_[i]) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::vector<NodeId>> Network::connected_components() const {
  std::vector<std::vector<NodeId>> components;
  std::vector<bool> seen(size(), false);
  for (NodeId start = 0; start < size(); ++start) {
    if (seen[start]) continue;
    std::vector<NodeId> comp;
    std::queue<NodeId> frontier;
    frontier.push(start);
    seen[start] = true;
    while (!frontier.empty()) {
      NodeId u = frontier.front();
      frontier.pop();
      comp.push_back(u);
      for (NodeId v : neighbors_[u]) {
        if (!seen[v]) {
          seen[v] = true;
          frontier.push(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

bool Network::is_connected() const {
  return size() > 0 && connected_components().size() == 1;
}

Network Network::induced_subgraph(std::span<const NodeId> nodes) const {
  std::vector<std::size_t> index(size(), size());
  for (std::size_t k = 0; k < nodes.size(); ++k) index[nodes[k]] = k;
  std::vector<Edge> sub;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    for (NodeId v : neighbors_[nodes[k]]) {
      if (index[v] != size() && k < index[v]) sub.emplace_back(k, index[v]);
    }
  }
  return Network(nodes.size(), sub);
}

Network path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Network(n, e);
}

Network cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  if (n > 2) e.emplace_back(n - 1, 0);
  return Network(n, e);
}

Network complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return Network(n, e);
}

Network star_graph(std::size_t leaves) {
  std::vector<Edge> e;
  for (NodeId i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Network(leaves + 1, e);
}

}  // namespace polya
