#pragma once

#include <atomic>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polya/graph_analysis.hpp"
#include "polya/network.hpp"
#include "polya/optimizer.hpp"
#include "polya/urn_state.hpp"

namespace polya {

enum class StrategyFamily { kInit, kCure };

// Rows (i)..(ix) of the initialization and curing strategy tables.
enum class StrategyVariant {
  kGradient = 1,       // (i)   conditional-gradient optimum of the proxy
  kUniform,            // (ii)  B/N everywhere
  kInnerUniform,       // (iii) uniform on inner nodes
  kInnerCentrality,    // (iv)  centrality weights on inner nodes
  kLayeredUniform,     // (v)   uniform on the layered target set
  kLayeredCentrality,  // (vi)  centrality weights on the layered target set
  kDenseUniform,       // (vii) uniform on the dense target set (no pruning)
  kDenseCentrality,    // (viii) centrality weights on the dense target set
  kAllCentrality,      // (ix)  centrality weights on every node
};

struct StrategySpec {
  StrategyFamily family = StrategyFamily::kInit;
  StrategyVariant variant = StrategyVariant::kUniform;
  // Used by kGradient only.
  DescentConfig descent{};
  ExposureOptions exposure{};

  // "init:vi", "cure:iv"; the family prefix may be omitted when a default
  // family is supplied. Throws polya::Error on anything else.
  static StrategySpec parse(std::string_view text,
                            std::optional<StrategyFamily> default_family = {});
  std::string to_string() const;
};

std::string_view roman(StrategyVariant v);

/// Strategy evaluation against one network, with the graph analyses (target
/// sets, degree-closeness weights) computed once. Safe to share between
/// threads: every method is const apart from the fallback counter.
class PolicySuite {
 public:
  explicit PolicySuite(const Network& net);

  const Network& network() const noexcept { return *net_; }

  // Nodes a variant may allocate to: inner nodes for (iii)/(iv), layered
  // targets for (v)/(vi), dense targets for (vii)/(viii), V otherwise.
  const TargetSet& target_set(StrategyVariant v) const;
  // |N_i| * C_i
  std::span<const double> centrality_weights() const { return weights_; }

  // Black initialization B with sum B = budget. `red` is needed by (i) only.
  std::vector<double> allocate_init(const StrategySpec& spec,
                                    std::span<const double> red,
                                    double budget) const;

  // Curing step Delta_b(n) with sum = budget, reading S_{i,n-1} from `state`.
  // `infection` is the red step the optimizer-backed variant plays against.
  std::vector<double> allocate_cure(const StrategySpec& spec,
                                    const UrnState& state, double budget,
                                    std::span<const double> infection) const;

  // Times a weighted variant found only zero weights on its target set and
  // fell back to a uniform split.
  std::size_t fallback_count() const noexcept { return fallbacks_.load(); }

 private:
  std::vector<double> spread(const TargetSet& targets,
                             std::span<const double> weights,
                             double budget) const;

  const Network* net_;
  TargetSet all_, inner_, layered_, dense_;
  std::vector<double> weights_;
  mutable std::atomic<std::size_t> fallbacks_{0};
};

// Free-function forms; they rebuild the graph analyses on every call.
std::vector<double> allocate_init(const StrategySpec& spec, const Network& net,
                                  std::span<const double> red, double budget);
std::vector<double> allocate_cure(const StrategySpec& spec, const Network& net,
                                  const UrnState& state, double budget,
                                  std::span<const double> infection);

}  // namespace polya
