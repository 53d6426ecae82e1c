#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "polya/network.hpp"

namespace polya {

// Ball masses added after the draw at one time step. `red[i]` is added to
// node i's urn if it draws red, `black[i]` if it draws black.
struct Reinforcement {
  std::vector<double> red;
  std::vector<double> black;

  static Reinforcement constant(std::size_t n, double red, double black) {
    return {std::vector<double>(n, red), std::vector<double>(n, black)};
  }
};

/// Binary node-by-time matrix of realized draws; column t holds Z_{., t+1}.
class DrawHistory {
 public:
  DrawHistory() = default;
  explicit DrawHistory(std::size_t nodes) : nodes_(nodes) {}
  DrawHistory(std::size_t nodes, std::vector<std::vector<std::uint8_t>> columns);

  std::size_t nodes() const noexcept { return nodes_; }
  std::size_t steps() const noexcept { return columns_.size(); }

  // Draw of node i at time t (1-based time).
  std::uint8_t at(NodeId i, std::size_t t) const { return columns_[t - 1][i]; }
  std::span<const std::uint8_t> column(std::size_t t) const {
    return columns_[t - 1];
  }

  void append(std::span<const std::uint8_t> z);

 private:
  std::size_t nodes_ = 0;
  std::vector<std::vector<std::uint8_t>> columns_;
};

enum class DrawRule {
  kClosed,  // Z = [Y <= S]
  kOpen,    // Z = [Y < S]; the mirror image of kClosed under Y -> 1 - Y
};

/// State of one run of the infinite-memory Polya network contagion process.
///
/// Holds per-node red and black masses (initial plus accumulated
/// reinforcement) and the super-urn totals over each closed neighborhood,
/// updated incrementally. The network must outlive the state.
class UrnState {
 public:
  struct Options {
    bool keep_history = false;
    // Super-urn totals are rebuilt from the node masses this often.
    std::uint64_t rebuild_interval = std::uint64_t{1} << 16;
  };

  // Throws EmptyUrnError if some super urn starts empty, polya::Error on
  // negative or mismatched masses.
  UrnState(const Network& net, std::span<const double> red,
           std::span<const double> black);
  UrnState(const Network& net, std::span<const double> red,
           std::span<const double> black, Options options);

  const Network& network() const noexcept { return *net_; }
  std::size_t size() const noexcept { return red_.size(); }
  // Number of draws performed so far (n).
  std::size_t time() const noexcept { return time_; }

  // Draws Z_i = [Y_i <= S_i] (or < for kOpen) from the current super urns,
  // then reinforces. Returns the draw vector.
  std::span<const std::uint8_t> step(const Reinforcement& delta,
                                     std::span<const double> uniforms,
                                     DrawRule rule = DrawRule::kClosed);

  // Reinforces with a prescribed draw vector (used to replay histories).
  void apply(const Reinforcement& delta, std::span<const std::uint8_t> z);

  // Individual urn: R_i + accumulated red, B_i + accumulated black.
  double red_mass(NodeId i) const { return red_[i]; }
  double black_mass(NodeId i) const { return black_[i]; }
  // X_{i,n}
  double total_mass(NodeId i) const { return red_[i] + black_[i]; }

  // Super urn totals over N'_i (c_i and d_i at the current time).
  double super_red(NodeId i) const { return super_red_[i]; }
  double super_black(NodeId i) const { return super_black_[i]; }

  // U_{i,n}; an empty individual urn reports its super-urn proportion.
  double urn_proportion(NodeId i) const;
  // S_{i,n} = P(Z_{i,n+1} = 1 | history).
  double exposure(NodeId i) const {
    return super_red_[i] / (super_red_[i] + super_black_[i]);
  }
  std::vector<double> exposures() const;

  // Most recent draw vector (empty before the first step).
  std::span<const std::uint8_t> last_draws() const noexcept { return last_; }
  // Populated only with Options::keep_history.
  const DrawHistory& history() const noexcept { return history_; }

  // Recomputes the super-urn totals from the node masses.
  void rebuild();

 private:
  void validate_super_urns() const;

  const Network* net_;
  Options options_;
  std::vector<double> red_;
  std::vector<double> black_;
  std::vector<double> super_red_;
  std::vector<double> super_black_;
  std::vector<std::uint8_t> last_;
  DrawHistory history_;
  std::size_t time_ = 0;
};

struct NetworkMetrics {
  double susceptibility = 0.0;  // mean of U_{i,n}
  double exposure = 0.0;        // mean of S_{i,n}
  std::vector<double> urn_proportions;
  std::vector<double> exposures;
};

NetworkMetrics metrics(const UrnState& state);

// Supplies the reinforcement for the next step (time state.time() + 1),
// given the state before that draw. Curing policies are adaptive, so the
// schedule is a callback rather than a stored table.
using ReinforcementPolicy = std::function<Reinforcement(const UrnState&)>;

ReinforcementPolicy constant_reinforcement(double red, double black);

}  // namespace polya
