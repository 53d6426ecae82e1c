#pragma once

// Reference implementations used only by the tests. They work from the
// adjacency relation and the raw update rule, never from the library's
// incremental state, so agreement is a real cross-check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "polya/network.hpp"
#include "polya/urn_state.hpp"

namespace oracle {

using polya::Network;
using polya::NodeId;

inline std::vector<std::vector<bool>> closed_adjacency(const Network& net) {
  const auto n = net.size();
  std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
  for (NodeId i = 0; i < n; ++i) {
    a[i][i] = true;
    for (NodeId j = 0; j < n; ++j) {
      if (i != j && net.adjacent(i, j)) a[i][j] = true;
    }
  }
  return a;
}

// N'_i strictly inside N'_j, by checking every node.
inline bool nested(const Network& net, NodeId i, NodeId j) {
  if (i == j) return false;
  const auto a = closed_adjacency(net);
  bool strict = false;
  for (NodeId k = 0; k < net.size(); ++k) {
    if (a[i][k] && !a[j][k]) return false;
    if (a[j][k] && !a[i][k]) strict = true;
  }
  return strict;
}

inline std::vector<NodeId> outer(const Network& net) {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < net.size(); ++i) {
    for (NodeId j = 0; j < net.size(); ++j) {
      if (nested(net, i, j)) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max() / 4;

inline std::vector<std::vector<std::uint64_t>> floyd_warshall(const Network& net) {
  const auto n = net.size();
  std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, kInf));
  for (NodeId i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (NodeId j = 0; j < n; ++j) {
      if (i != j && net.adjacent(i, j)) d[i][j] = 1;
    }
  }
  for (NodeId k = 0; k < n; ++k)
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Erdos-Renyi graph conditioned on connectivity (resampled until connected).
inline Network random_connected(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  for (;;) {
    std::vector<polya::Edge> edges;
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = i + 1; j < n; ++j)
        if (coin(rng)) edges.emplace_back(i, j);
    Network net(n, edges);
    if (net.is_connected()) return net;
  }
}

inline std::vector<double> random_vector(std::size_t n, double lo, double hi,
                                         std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

// Super-urn red fraction of every node, from raw masses.
inline std::vector<double> super_fractions(const Network& net,
                                           const std::vector<double>& red,
                                           const std::vector<double>& black) {
  const auto a = closed_adjacency(net);
  std::vector<double> s(net.size());
  for (NodeId i = 0; i < net.size(); ++i) {
    double r = 0.0, b = 0.0;
    for (NodeId j = 0; j < net.size(); ++j) {
      if (a[i][j]) {
        r += red[j];
        b += black[j];
      }
    }
    s[i] = r / (r + b);
  }
  return s;
}

// Closed form at time 1, summed directly.
inline double infection_rate_time1(const Network& net, const std::vector<double>& red,
                                   const std::vector<double>& black) {
  const auto s = super_fractions(net, red, black);
  double sum = 0.0;
  for (double v : s) sum += v;
  return sum / static_cast<double>(net.size());
}

// Average infection rate at time n with constant reinforcement, by listing
// every history of length n-1 as an integer and replaying it from scratch.
inline double average_infection_rate(const Network& net, std::vector<double> red0,
                                     std::vector<double> black0, double dr,
                                     double db, std::size_t n) {
  const std::size_t N = net.size();
  const std::size_t bits = N * (n - 1);
  double total = 0.0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
    auto red = red0;
    auto black = black0;
    double p = 1.0;
    for (std::size_t t = 0; t + 1 < n; ++t) {
      const auto s = super_fractions(net, red, black);
      for (NodeId i = 0; i < N; ++i) {
        const bool z = (code >> (t * N + i)) & 1u;
        p *= z ? s[i] : 1.0 - s[i];
        if (z) red[i] += dr;
        else black[i] += db;
      }
    }
    const auto s = super_fractions(net, red, black);
    double mean = 0.0;
    for (double v : s) mean += v;
    total += p * mean / static_cast<double>(N);
  }
  return total;
}

// E[mean_i S_{i,n} | history] by enumerating all 2^N draw vectors jointly.
inline double expected_exposure(const polya::UrnState& state,
                                std::span<const double> x,
                                std::span<const double> y) {
  const auto& net = state.network();
  const std::size_t N = net.size();
  const auto a = closed_adjacency(net);
  double total = 0.0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << N); ++code) {
    double w = 1.0;
    for (NodeId j = 0; j < N; ++j) {
      const double s = state.exposure(j);
      w *= (code >> j) & 1u ? s : 1.0 - s;
    }
    double mean = 0.0;
    for (NodeId i = 0; i < N; ++i) {
      double c = state.super_red(i), d = state.super_black(i);
      double cy = 0.0, dx = 0.0;
      for (NodeId j = 0; j < N; ++j) {
        if (!a[i][j]) continue;
        if ((code >> j) & 1u) cy += y[j];
        else dx += x[j];
      }
      mean += (c + cy) / (c + d + cy + dx);
    }
    total += w * mean / static_cast<double>(N);
  }
  return total;
}

// Central finite-difference gradient with per-coordinate step h * max(1, |x_k|).
inline std::vector<double> finite_difference(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double h = 1e-6) {
  std::vector<double> g(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double step = h * std::max(1.0, std::abs(x[k]));
    const double keep = x[k];
    x[k] = keep + step;
    const double up = f(x);
    x[k] = keep - step;
    const double down = f(x);
    x[k] = keep;
    g[k] = (up - down) / (2.0 * step);
  }
  return g;
}

// Minimum of f over the budget simplex on a lattice with `divisions` steps
// per unit of budget (N <= 4 keeps this small).
inline double grid_minimum(const std::function<double(const std::vector<double>&)>& f,
                           std::size_t dim, double budget, std::size_t divisions,
                           std::vector<double>* argmin = nullptr) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> counts(dim, 0);
  std::vector<double> x(dim);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k,
                                                          std::size_t left) {
    if (k + 1 == dim) {
      counts[k] = left;
      for (std::size_t j = 0; j < dim; ++j)
        x[j] = budget * static_cast<double>(counts[j]) / static_cast<double>(divisions);
      const double v = f(x);
      if (v < best) {
        best = v;
        if (argmin) *argmin = x;
      }
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      counts[k] = c;
      rec(k + 1, left - c);
    }
  };
  rec(0, divisions);
  return best;
}

// Minimum of a 1-D function on [lo, hi] by a dense scan followed by local
// refinement.
inline double scan_minimum(const std::function<double(double)>& f, double lo,
                           double hi, std::size_t points = 20001,
                           double* where = nullptr) {
  double best = std::numeric_limits<double>::infinity(), at = lo;
  for (std::size_t k = 0; k < points; ++k) {
    const double t = lo + (hi - lo) * static_cast<double>(k) /
                              static_cast<double>(points - 1);
    const double v = f(t);
    if (v < best) {
      best = v;
      at = t;
    }
  }
  if (where) *where = at;
  return best;
}

}  // namespace oracle
