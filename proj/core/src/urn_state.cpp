#include "polya/urn_state.hpp"

#include <string>

#include "polya/error.hpp"

namespace polya {

DrawHistory::DrawHistory(std::size_t nodes,
                         std::vector<std::vector<std::uint8_t>> columns)
    : nodes_(nodes) {
  for (const auto& c : columns) append(c);
}

void DrawHistory::append(std::span<const std::uint8_t> z) {
  if (z.size() != nodes_) {
    throw Error("draw vector has " + std::to_string(z.size()) +
                " entries, expected " + std::to_string(nodes_));
  }
  for (auto v : z) {
    if (v > 1) throw Error("draw values must be 0 or 1");
  }
  columns_.emplace_back(z.begin(), z.end());
}

UrnState::UrnState(const Network& net, std::span<const double> red,
                   std::span<const double> black)
    : UrnState(net, red, black, Options{}) {}

UrnState::UrnState(const Network& net, std::span<const double> red,
                   std::span<const double> black, Options options)
    : net_(&net),
      options_(options),
      red_(red.begin(), red.end()),
      black_(black.begin(), black.end()),
      history_(net.size()) {
  if (red_.size() != net.size() || black_.size() != net.size()) {
    throw Error("initial allocation size does not match the network (" +
                std::to_string(net.size()) + " nodes)");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    if (!(red_[i] >= 0.0) || !(black_[i] >= 0.0)) {
      throw Error("initial ball masses must be nonnegative (node " +
                  std::to_string(i + 1) + ")");
    }
  }
  if (options_.rebuild_interval == 0) options_.rebuild_interval = 1;
  rebuild();
  validate_super_urns();
}

void UrnState::validate_super_urns() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (!(super_red_[i] + super_black_[i] > 0.0)) {
      throw EmptyUrnError("super urn of node " + std::to_string(i + 1) +
                          " is empty");
    }
  }
}

void UrnState::rebuild() {
  const std::size_t n = size();
  super_red_.assign(n, 0.0);
  super_black_.assign(n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j : net_->closed_neighborhood(i)) {
      super_red_[i] += red_[j];
      super_black_[i] += black_[j];
    }
  }
}

std::span<const std::uint8_t> UrnState::step(const Reinforcement& delta,
                                             std::span<const double> uniforms,
                                             DrawRule rule) {
  const std::size_t n = size();
  if (uniforms.size() != n) throw Error("uniform vector size mismatch");
  std::vector<std::uint8_t> z(n);
  for (NodeId i = 0; i < n; ++i) {
    const double s = exposure(i);
    z[i] = rule == DrawRule::kClosed ? (uniforms[i] <= s) : (uniforms[i] < s);
  }
  apply(delta, z);
  return last_;
}

void UrnState::apply(const Reinforcement& delta,
                     std::span<const std::uint8_t> z) {
  const std::size_t n = size();
  if (delta.red.size() != n || delta.black.size() != n || z.size() != n) {
    throw Error("reinforcement / draw vector size mismatch");
  }
  for (NodeId j = 0; j < n; ++j) {
    if (!(delta.red[j] >= 0.0) || !(delta.black[j] >= 0.0) || z[j] > 1) {
      throw Error("invalid reinforcement or draw at node " +
                  std::to_string(j + 1));
    }
  }
  for (NodeId j = 0; j < n; ++j) {
    const double add = z[j] ? delta.red[j] : delta.black[j];
    if (add == 0.0) continue;
    auto& node = z[j] ? red_ : black_;
    auto& super = z[j] ? super_red_ : super_black_;
    node[j] += add;
    for (NodeId i : net_->closed_neighborhood(j)) super[i] += add;
  }
  last_.assign(z.begin(), z.end());
  if (options_.keep_history) history_.append(z);
  ++time_;
  if (time_ % options_.rebuild_interval == 0) rebuild();
}

double UrnState::urn_proportion(NodeId i) const {
  const double total = red_[i] + black_[i];
  return total > 0.0 ? red_[i] / total : exposure(i);
}

std::vector<double> UrnState::exposures() const {
  std::vector<double> s(size());
  for (NodeId i = 0; i < size(); ++i) s[i] = exposure(i);
  return s;
}

NetworkMetrics metrics(const UrnState& state) {
  NetworkMetrics m;
  const std::size_t n = state.size();
  m.urn_proportions.resize(n);
  m.exposures.resize(n);
  for (NodeId i = 0; i < n; ++i) {
    m.urn_proportions[i] = state.urn_proportion(i);
    m.exposures[i] = state.exposure(i);
    m.susceptibility += m.urn_proportions[i];
    m.exposure += m.exposures[i];
  }
  if (n > 0) {
    m.susceptibility /= static_cast<double>(n);
    m.exposure /= static_cast<double>(n);
  }
  return m;
}

ReinforcementPolicy constant_reinforcement(double red, double black) {
  return [red, black](const UrnState& s) {
    return Reinforcement::constant(s.size(), red, black);
  };
}

}  // namespace polya
