#include "polya/exact.hpp"

#include <string>

#include "polya/error.hpp"
#include "polya/random.hpp"

namespace polya {
namespace {

void check_cap(std::size_t nodes, std::size_t steps,
               const EnumerationOptions& opts) {
  const std::size_t cap = std::min<std::size_t>(opts.path_cap_bits, 62);
  if (steps > 0 && nodes > cap / steps) {
    throw EnumerationCapError(
        "exact enumeration over " + std::to_string(nodes) + " nodes x " +
        std::to_string(steps) + " steps exceeds the cap of 2^" +
        std::to_string(cap) + " paths; use Monte Carlo instead");
  }
}

// Probability of the draw vector encoded by `mask` given exposures `s`.
double draw_probability(std::span<const double> s, std::uint64_t mask) {
  double p = 1.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    p *= (mask >> i) & 1u ? s[i] : 1.0 - s[i];
  }
  return p;
}

void decode(std::uint64_t mask, std::vector<std::uint8_t>& z) {
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = (mask >> i) & 1u;
}

// Depth-first walk over all histories up to `depth`; `visit(state, weight)`
// is called at every tree node, including the root.
template <typename Visit>
void walk_histories(const UrnState& state, double weight, std::size_t depth,
                    const ReinforcementPolicy& policy, Visit& visit) {
  visit(state, weight);
  if (state.time() == depth) return;
  const auto s = state.exposures();
  const Reinforcement delta = policy(state);
  std::vector<std::uint8_t> z(state.size());
  const std::uint64_t outcomes = std::uint64_t{1} << state.size();
  for (std::uint64_t mask = 0; mask < outcomes; ++mask) {
    const double p = draw_probability(s, mask);
    if (p == 0.0) continue;
    decode(mask, z);
    UrnState child = state;
    child.apply(delta, z);
    walk_histories(child, weight * p, depth, policy, visit);
  }
}

double mean_exposure(const UrnState& state) {
  double sum = 0.0;
  for (NodeId i = 0; i < state.size(); ++i) sum += state.exposure(i);
  return sum / static_cast<double>(state.size());
}

}  // namespace

double joint_probability(const Network& net, std::span<const double> red,
                         std::span<const double> black,
                         const ReinforcementPolicy& policy,
                         const DrawHistory& history) {
  if (history.nodes() != net.size()) {
    throw Error("history covers " + std::to_string(history.nodes()) +
                " nodes, network has " + std::to_string(net.size()));
  }
  UrnState state(net, red, black);
  double p = 1.0;
  for (std::size_t t = 1; t <= history.steps(); ++t) {
    const auto z = history.column(t);
    for (NodeId i = 0; i < net.size(); ++i) {
      const double s = state.exposure(i);
      p *= z[i] ? s : 1.0 - s;
    }
    if (p == 0.0) return 0.0;
    state.apply(policy(state), z);
  }
  return p;
}

std::vector<double> average_infection_rates(const Network& net,
                                            std::span<const double> red,
                                            std::span<const double> black,
                                            const ReinforcementPolicy& policy,
                                            std::size_t n,
                                            const EnumerationOptions& opts) {
  if (n == 0) return {};
  check_cap(net.size(), n - 1, opts);
  std::vector<double> rates(n, 0.0);
  auto visit = [&](const UrnState& s, double w) {
    rates[s.time()] += w * mean_exposure(s);
  };
  walk_histories(UrnState(net, red, black), 1.0, n - 1, policy, visit);
  return rates;
}

double average_infection_rate(const Network& net, std::span<const double> red,
                              std::span<const double> black,
                              const ReinforcementPolicy& policy, std::size_t n,
                              const EnumerationOptions& opts) {
  if (n == 0) throw Error("average infection rate is defined for n >= 1");
  return average_infection_rates(net, red, black, policy, n, opts).back();
}

double partition_sanity(const Network& net, std::span<const double> red,
                        std::span<const double> black,
                        const ReinforcementPolicy& policy, std::size_t n,
                        const EnumerationOptions& opts) {
  check_cap(net.size(), n, opts);
  double total = 0.0;
  auto visit = [&](const UrnState& s, double w) {
    if (s.time() == n) total += w;
  };
  walk_histories(UrnState(net, red, black), 1.0, n, policy, visit);
  return total;
}

namespace {

struct SuperSums {
  std::vector<double> red, black;
};

SuperSums super_sums(const Network& net, std::span<const double> red,
                     std::span<const double> black) {
  if (red.size() != net.size() || black.size() != net.size()) {
    throw Error("allocation size does not match the network");
  }
  SuperSums s{std::vector<double>(net.size(), 0.0),
              std::vector<double>(net.size(), 0.0)};
  for (NodeId i = 0; i < net.size(); ++i) {
    for (NodeId j : net.closed_neighborhood(i)) {
      s.red[i] += red[j];
      s.black[i] += black[j];
    }
    if (!(s.red[i] + s.black[i] > 0.0)) {
      throw EmptyUrnError("super urn of node " + std::to_string(i + 1) +
                          " is empty");
    }
  }
  return s;
}

}  // namespace

ValueAndGradient infection_rate_time1(const Network& net,
                                      std::span<const double> red,
                                      std::span<const double> black) {
  const auto s = super_sums(net, red, black);
  const std::size_t n = net.size();
  for (NodeId i = 0; i < n; ++i) {
    if (!(s.red[i] > 0.0)) {
      throw EmptyUrnError("super urn of node " + std::to_string(i + 1) +
                          " holds no red mass");
    }
  }
  ValueAndGradient out{0.0, std::vector<double>(n, 0.0)};
  const double inv_n = 1.0 / static_cast<double>(n);
  for (NodeId i = 0; i < n; ++i) {
    const double total = s.red[i] + s.black[i];
    out.value += s.red[i] / total;
    const double d = -s.red[i] / (total * total);
    // B_j enters Bbar_i for every i in N'_j, i.e. every j in N'_i.
    for (NodeId j : net.closed_neighborhood(i)) out.gradient[j] += d;
  }
  out.value *= inv_n;
  for (double& g : out.gradient) g *= inv_n;
  return out;
}

ValueAndGradient infection_rate_time1_red(const Network& net,
                                          std::span<const double> red,
                                          std::span<const double> black) {
  const auto s = super_sums(net, red, black);
  const std::size_t n = net.size();
  ValueAndGradient out{0.0, std::vector<double>(n, 0.0)};
  const double inv_n = 1.0 / static_cast<double>(n);
  for (NodeId i = 0; i < n; ++i) {
    const double total = s.red[i] + s.black[i];
    out.value += s.red[i] / total;
    const double d = s.black[i] / (total * total);
    for (NodeId j : net.closed_neighborhood(i)) out.gradient[j] += d;
  }
  out.value *= inv_n;
  for (double& g : out.gradient) g *= inv_n;
  return out;
}

ExposureResult expected_exposure(const UrnState& state,
                                 std::span<const double> curing,
                                 std::span<const double> infection,
                                 const ExposureOptions& opts) {
  const Network& net = state.network();
  const std::size_t n = net.size();
  if (curing.size() != n || infection.size() != n) {
    throw Error("expected_exposure: allocation size does not match network");
  }
  for (NodeId j = 0; j < n; ++j) {
    if (!(curing[j] >= 0.0) || !(infection[j] >= 0.0)) {
      throw Error("expected_exposure: reinforcement must be nonnegative");
    }
  }

  ExposureResult out;
  out.grad_curing.assign(n, 0.0);
  out.grad_infection.assign(n, 0.0);
  const auto s = state.exposures();

  std::vector<std::uint8_t> z;
  std::vector<double> gx, gy;
  for (NodeId i = 0; i < n; ++i) {
    const auto nb = net.closed_neighborhood(i);
    const std::size_t k = nb.size();
    const double c = state.super_red(i);
    const double d = state.super_black(i);
    z.assign(k, 0);
    gx.assign(k, 0.0);
    gy.assign(k, 0.0);
    double value = 0.0;

    // Adds weight * f_i(x, y, z) and its gradients for the outcome in `z`.
    auto accumulate = [&](double weight) {
      double red_add = 0.0, black_add = 0.0;
      for (std::size_t a = 0; a < k; ++a) {
        if (z[a]) red_add += infection[nb[a]];
        else black_add += curing[nb[a]];
      }
      const double num = c + red_add;
      const double den = num + d + black_add;
      if (!(den > 0.0)) {
        throw Error("expected_exposure: empty super urn at node " +
                    std::to_string(i + 1));
      }
      const double inv2 = 1.0 / (den * den);
      value += weight * num / den;
      for (std::size_t a = 0; a < k; ++a) {
        if (z[a]) gy[a] += weight * (d + black_add) * inv2;
        else gx[a] -= weight * num * inv2;
      }
    };

    if (k <= opts.max_enumerated_neighborhood) {
      const std::uint64_t outcomes = std::uint64_t{1} << k;
      for (std::uint64_t mask = 0; mask < outcomes; ++mask) {
        double w = 1.0;
        for (std::size_t a = 0; a < k; ++a) {
          z[a] = (mask >> a) & 1u;
          w *= z[a] ? s[nb[a]] : 1.0 - s[nb[a]];
        }
        if (w != 0.0) accumulate(w);
      }
    } else {
      out.used_monte_carlo = true;
      RandomStream rng(opts.monte_carlo_seed, i);
      const double w = 1.0 / static_cast<double>(opts.monte_carlo_samples);
      for (std::uint64_t m = 0; m < opts.monte_carlo_samples; ++m) {
        for (std::size_t a = 0; a < k; ++a) z[a] = rng.uniform() <= s[nb[a]];
        accumulate(w);
      }
    }

    out.value += value;
    for (std::size_t a = 0; a < k; ++a) {
      out.grad_curing[nb[a]] += gx[a];
      out.grad_infection[nb[a]] += gy[a];
    }
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  out.value *= inv_n;
  for (double& g : out.grad_curing) g *= inv_n;
  for (double& g : out.grad_infection) g *= inv_n;
  return out;
}

}  // namespace polya
