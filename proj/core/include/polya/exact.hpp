#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polya/network.hpp"
#include "polya/urn_state.hpp"

namespace polya {

// Exact probability computations by enumeration of draw histories. Costs are
// exponential; every routine checks a cap on log2 of the number of enumerated
// paths and throws EnumerationCapError above it.

struct EnumerationOptions {
  // Maximum N * (number of enumerated steps).
  std::size_t path_cap_bits = 24;
};

// P(Z_i^n = a_i^n for all i): product over t and i of S_{i,t-1} or its
// complement along the replayed history. Throws on dimension mismatch.
double joint_probability(const Network& net, std::span<const double> red,
                         std::span<const double> black,
                         const ReinforcementPolicy& policy,
                         const DrawHistory& history);

// Average infection rate at each time 1..n: entry t-1 holds
// (1/N) sum_i P(Z_{i,t} = 1). Enumerates the 2^{N(n-1)} histories of length
// n-1 once and reads every earlier time off the same tree.
std::vector<double> average_infection_rates(const Network& net,
                                            std::span<const double> red,
                                            std::span<const double> black,
                                            const ReinforcementPolicy& policy,
                                            std::size_t n,
                                            const EnumerationOptions& opts = {});

// The last entry of average_infection_rates.
double average_infection_rate(const Network& net, std::span<const double> red,
                              std::span<const double> black,
                              const ReinforcementPolicy& policy, std::size_t n,
                              const EnumerationOptions& opts = {});

// Total probability mass over all 2^{N n} histories of length n (1 up to
// rounding).
double partition_sanity(const Network& net, std::span<const double> red,
                        std::span<const double> black,
                        const ReinforcementPolicy& policy, std::size_t n,
                        const EnumerationOptions& opts = {});

struct ValueAndGradient {
  double value = 0.0;
  std::vector<double> gradient;
};

// Closed form at n = 1: I_1 = (1/N) sum_i Rbar_i / (Rbar_i + Bbar_i), with the
// gradient taken with respect to the black initialization B. Requires
// Rbar_i > 0 for every node (throws EmptyUrnError otherwise).
ValueAndGradient infection_rate_time1(const Network& net,
                                      std::span<const double> red,
                                      std::span<const double> black);

// Same value, gradient with respect to the red initialization R. Only needs
// nonempty super urns.
ValueAndGradient infection_rate_time1_red(const Network& net,
                                          std::span<const double> red,
                                          std::span<const double> black);

struct ExposureOptions {
  // Nodes with larger closed neighborhoods fall back to Monte Carlo.
  std::size_t max_enumerated_neighborhood = 20;
  std::uint64_t monte_carlo_samples = 100000;
  std::uint64_t monte_carlo_seed = 0x5eed;
};

struct ExposureResult {
  double value = 0.0;
  std::vector<double> grad_curing;    // d/dx, x = black reinforcement
  std::vector<double> grad_infection; // d/dy, y = red reinforcement
  bool used_monte_carlo = false;
};

/// One-step expected network exposure E[S~_n | F_{n-1}] as a function of the
/// curing step x and infection step y applied after the n-th draw, given the
/// current state (which carries c_i, d_i and the draw probabilities
/// S_{j,n-1}).
///
/// Draws at different nodes are conditionally independent, so each node's
/// term only enumerates the 2^{|N'_i|} outcomes of its own closed
/// neighborhood. Throws polya::Error when some f denominator vanishes.
ExposureResult expected_exposure(const UrnState& state,
                                 std::span<const double> curing,
                                 std::span<const double> infection,
                                 const ExposureOptions& opts = {});

}  // namespace polya
