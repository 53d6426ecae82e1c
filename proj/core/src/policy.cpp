#include "polya/policy.hpp"

#include <array>
#include <string>

#include "polya/error.hpp"

namespace polya {
namespace {

constexpr std::array<std::string_view, 9> kRoman = {
    "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"};

bool is_weighted(StrategyVariant v) {
  return v == StrategyVariant::kInnerCentrality ||
         v == StrategyVariant::kLayeredCentrality ||
         v == StrategyVariant::kDenseCentrality ||
         v == StrategyVariant::kAllCentrality;
}

}  // namespace

std::string_view roman(StrategyVariant v) {
  return kRoman[static_cast<std::size_t>(v) - 1];
}

StrategySpec StrategySpec::parse(std::string_view text,
                                 std::optional<StrategyFamily> default_family) {
  StrategySpec spec;
  std::string_view rest = text;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    auto family = text.substr(0, colon);
    if (family == "init") spec.family = StrategyFamily::kInit;
    else if (family == "cure") spec.family = StrategyFamily::kCure;
    else throw Error("unknown strategy family '" + std::string(family) + "'");
    rest = text.substr(colon + 1);
  } else if (default_family) {
    spec.family = *default_family;
  } else {
    throw Error("strategy '" + std::string(text) +
                "' needs a family prefix (init: or cure:)");
  }
  for (std::size_t k = 0; k < kRoman.size(); ++k) {
    if (rest == kRoman[k]) {
      spec.variant = static_cast<StrategyVariant>(k + 1);
      return spec;
    }
  }
  throw Error("unknown strategy variant '" + std::string(rest) +
              "' (expected i..ix)");
}

std::string StrategySpec::to_string() const {
  return std::string(family == StrategyFamily::kInit ? "init:" : "cure:") +
         std::string(roman(variant));
}

PolicySuite::PolicySuite(const Network& net)
    : net_(&net),
      all_(target_all(net)),
      inner_(target_inner(net)),
      layered_(target_set_layered(net)),
      dense_(target_set_dense(net, /*prune=*/false)) {
  const auto closeness = closeness_centrality(net);
  weights_.resize(net.size());
  for (NodeId i = 0; i < net.size(); ++i) {
    weights_[i] = static_cast<double>(net.degree(i)) * closeness[i];
  }
}

const TargetSet& PolicySuite::target_set(StrategyVariant v) const {
  switch (v) {
    case StrategyVariant::kInnerUniform:
    case StrategyVariant::kInnerCentrality: return inner_;
    case StrategyVariant::kLayeredUniform:
    case StrategyVariant::kLayeredCentrality: return layered_;
    case StrategyVariant::kDenseUniform:
    case StrategyVariant::kDenseCentrality: return dense_;
    default: return all_;
  }
}

std::vector<double> PolicySuite::spread(const TargetSet& targets,
                                        std::span<const double> weights,
                                        double budget) const {
  if (targets.nodes.empty()) throw Error("strategy target set is empty");
  if (!(budget >= 0.0)) throw Error("budget must be nonnegative");
  std::vector<double> out(net_->size(), 0.0);
  double total = 0.0;
  if (!weights.empty()) {
    for (NodeId i : targets.nodes) total += weights[i];
  }
  if (weights.empty() || !(total > 0.0)) {
    if (!weights.empty()) fallbacks_.fetch_add(1, std::memory_order_relaxed);
    const double share = budget / static_cast<double>(targets.nodes.size());
    for (NodeId i : targets.nodes) out[i] = share;
    return out;
  }
  for (NodeId i : targets.nodes) out[i] = budget * (weights[i] / total);
  return out;
}

std::vector<double> PolicySuite::allocate_init(const StrategySpec& spec,
                                               std::span<const double> red,
                                               double budget) const {
  if (spec.family != StrategyFamily::kInit) {
    throw Error("allocate_init given a curing strategy (" + spec.to_string() + ")");
  }
  if (spec.variant == StrategyVariant::kGradient) {
    return optimize_init(*net_, red, budget, spec.descent).x;
  }
  const auto& targets = target_set(spec.variant);
  return spread(targets,
                is_weighted(spec.variant) ? std::span<const double>(weights_)
                                          : std::span<const double>{},
                budget);
}

std::vector<double> PolicySuite::allocate_cure(
    const StrategySpec& spec, const UrnState& state, double budget,
    std::span<const double> infection) const {
  if (spec.family != StrategyFamily::kCure) {
    throw Error("allocate_cure given an initialization strategy (" +
                spec.to_string() + ")");
  }
  if (state.size() != net_->size()) throw Error("state/network size mismatch");
  if (spec.variant == StrategyVariant::kGradient) {
    return optimize_cure_step(state, budget, infection, spec.descent,
                              spec.exposure)
        .x;
  }
  const auto& targets = target_set(spec.variant);
  if (!is_weighted(spec.variant)) return spread(targets, {}, budget);
  std::vector<double> w(net_->size());
  for (NodeId i = 0; i < net_->size(); ++i) {
    w[i] = weights_[i] * state.exposure(i);
  }
  return spread(targets, w, budget);
}

std::vector<double> allocate_init(const StrategySpec& spec, const Network& net,
                                  std::span<const double> red, double budget) {
  return PolicySuite(net).allocate_init(spec, red, budget);
}

std::vector<double> allocate_cure(const StrategySpec& spec, const Network& net,
                                  const UrnState& state, double budget,
                                  std::span<const double> infection) {
  return PolicySuite(net).allocate_cure(spec, state, budget, infection);
}

}  // namespace polya
