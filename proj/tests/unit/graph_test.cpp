#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "polya/error.hpp"
#include "polya/graph_analysis.hpp"
#include "polya/network.hpp"
#include "polya/network_io.hpp"

using namespace polya;

namespace {

std::vector<NodeId> one_based(std::span<const NodeId> v) {
  std::vector<NodeId> out(v.begin(), v.end());
  for (auto& x : out) ++x;
  return out;
}

using Ids = std::vector<NodeId>;

}  // namespace

TEST(NetworkIo, ParsesPathMatrix) {
  Network net = load_network_text("3\n0 1 0\n1 0 1\n0 1 0\n",
                                  NetworkFormat::kAdjacencyMatrix);
  EXPECT_EQ(net, path_graph(3));
  EXPECT_EQ(one_based(net.closed_neighborhood(1)), (Ids{1, 2, 3}));
}

TEST(NetworkIo, MatrixHeaderIsOptional) {
  Network net = load_network_text("0,1,0\n1,0,1\n0,1,0\n",
                                  NetworkFormat::kAdjacencyMatrix);
  EXPECT_EQ(net, path_graph(3));
}

TEST(NetworkIo, ParsesTriangleEdgeList) {
  Network net = load_network_text("1 2\n2 3\n3 1\n", NetworkFormat::kEdgeList);
  ASSERT_EQ(net.size(), 3u);
  for (NodeId i = 0; i < 3; ++i) {
    EXPECT_EQ(one_based(net.closed_neighborhood(i)), (Ids{1, 2, 3}));
  }
}

TEST(NetworkIo, RejectsAsymmetricMatrix) {
  EXPECT_THROW(load_network_text("2\n0 1\n0 0\n", NetworkFormat::kAdjacencyMatrix),
               AsymmetricAdjacencyError);
}

TEST(NetworkIo, RejectsMalformedInput) {
  EXPECT_THROW(parse_adjacency_matrix("2\n0 1\n1\n"), ParseError);
  EXPECT_THROW(parse_adjacency_matrix("2\n0 2\n2 0\n"), ParseError);
  EXPECT_THROW(parse_adjacency_matrix("2\n1 1\n1 0\n"), ParseError);
  EXPECT_THROW(parse_edge_list("1 x\n"), ParseError);
  EXPECT_THROW(parse_edge_list("0 1\n"), ParseError);
  EXPECT_THROW(parse_edge_list("2 2\n"), ParseError);
}

TEST(NetworkIo, DisconnectedGraphListsComponents) {
  const char* text = "4\n0 1 0 0\n1 0 0 0\n0 0 0 1\n0 0 1 0\n";
  try {
    load_network_text(text, NetworkFormat::kAdjacencyMatrix);
    FAIL() << "expected DisconnectedGraphError";
  } catch (const DisconnectedGraphError& e) {
    ASSERT_EQ(e.components().size(), 2u);
    EXPECT_EQ(e.components()[0], (Ids{0, 1}));
    EXPECT_EQ(e.components()[1], (Ids{2, 3}));
  }
  Network kept = load_network_text("1 2\n3 4\n4 5\n", NetworkFormat::kEdgeList,
                                   /*largest_component=*/true);
  EXPECT_EQ(kept, path_graph(3));
}

TEST(NetworkIo, ExtensionSniffing) {
  EXPECT_EQ(format_from_extension("a/b.edges"), NetworkFormat::kEdgeList);
  EXPECT_EQ(format_from_extension("x.EL"), NetworkFormat::kEdgeList);
  EXPECT_EQ(format_from_extension("x.adj"), NetworkFormat::kAdjacencyMatrix);
  EXPECT_EQ(format_from_extension("x.txt"), NetworkFormat::kAdjacencyMatrix);
}

TEST(NetworkIo, WritersRoundTrip) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    Network net = oracle::random_connected(9, 0.35, rng);
    std::ostringstream m, e;
    write_adjacency_matrix(m, net);
    write_edge_list(e, net);
    EXPECT_EQ(parse_adjacency_matrix(m.str()), net);
    EXPECT_EQ(parse_edge_list(e.str()), net);
  }
}

TEST(Network, RejectsSelfLoopsAndMergesDuplicates) {
  std::vector<Edge> loop{{1, 1}};
  EXPECT_THROW(Network(3, loop), Error);
  std::vector<Edge> bad{{0, 3}};
  EXPECT_THROW(Network(3, bad), Error);
  std::vector<Edge> dup{{0, 1}, {1, 0}, {0, 1}};
  EXPECT_EQ(Network(2, dup).edge_count(), 1u);
}

TEST(Network, SymmetricAndClosedNeighborhoodContainsSelf) {
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 30; ++rep) {
    Network net = oracle::random_connected(10, 0.3, rng);
    for (NodeId i = 0; i < net.size(); ++i) {
      auto cn = net.closed_neighborhood(i);
      EXPECT_TRUE(std::binary_search(cn.begin(), cn.end(), i));
      for (NodeId j = 0; j < net.size(); ++j) {
        EXPECT_EQ(net.adjacent(i, j), net.adjacent(j, i));
      }
    }
  }
}

TEST(BarabasiAlbert, TreeForSingleAttachment) {
  for (std::uint64_t seed : {1u, 7u, 99u}) {
    Network net = generate_barabasi_albert(100, 1, seed);
    EXPECT_EQ(net.size(), 100u);
    EXPECT_EQ(net.edge_count(), 99u);
    EXPECT_TRUE(net.is_connected());
    EXPECT_DOUBLE_EQ(2.0 * net.edge_count() / net.size(), 1.98);
  }
}

TEST(BarabasiAlbert, DenseVariantMatchesEdgeCount) {
  Network net = generate_barabasi_albert(100, 10, 3);
  EXPECT_EQ(net.edge_count(), 945u);
  EXPECT_TRUE(net.is_connected());
  EXPECT_DOUBLE_EQ(2.0 * net.edge_count() / net.size(), 18.9);
}

TEST(BarabasiAlbert, SmallestCaseAndErrors) {
  Network net = generate_barabasi_albert(2, 1, 0);
  EXPECT_EQ(net.edge_count(), 1u);
  EXPECT_THROW(generate_barabasi_albert(5, 0, 0), Error);
  EXPECT_THROW(generate_barabasi_albert(5, 5, 0), Error);
}

TEST(BarabasiAlbert, DeterministicPerSeed) {
  EXPECT_EQ(generate_barabasi_albert(60, 2, 42), generate_barabasi_albert(60, 2, 42));
  EXPECT_FALSE(generate_barabasi_albert(60, 2, 42) == generate_barabasi_albert(60, 2, 43));
}

TEST(OuterNodes, Fixtures) {
  EXPECT_EQ(one_based(outer_nodes(star_graph(4))), (Ids{2, 3, 4, 5}));
  EXPECT_EQ(one_based(outer_nodes(path_graph(5))), (Ids{1, 5}));
  EXPECT_TRUE(outer_nodes(complete_graph(4)).empty());
  EXPECT_EQ(one_based(inner_nodes(path_graph(5))), (Ids{2, 3, 4}));
}

TEST(OuterNodes, MatchesBruteForce) {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rep % 11;
    Network net = oracle::random_connected(n, 0.2 + 0.05 * (rep % 8), rng);
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = 0; j < n; ++j)
        ASSERT_EQ(strictly_nested(net, i, j), oracle::nested(net, i, j));
    EXPECT_EQ(outer_nodes(net), oracle::outer(net));
  }
}

TEST(Closeness, Fixtures) {
  auto p3 = closeness_centrality(path_graph(3));
  EXPECT_DOUBLE_EQ(p3[0], 1.0 / 3);
  EXPECT_DOUBLE_EQ(p3[1], 1.0 / 2);
  EXPECT_DOUBLE_EQ(p3[2], 1.0 / 3);
  for (double c : closeness_centrality(complete_graph(3))) EXPECT_DOUBLE_EQ(c, 0.5);
  auto p5 = closeness_centrality(path_graph(5));
  const double want[] = {1.0 / 10, 1.0 / 7, 1.0 / 6, 1.0 / 7, 1.0 / 10};
  for (int i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(p5[i], want[i]);
  EXPECT_EQ(closeness_centrality(path_graph(1))[0], 1.0);
}

TEST(Closeness, MatchesFloydWarshall) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    Network net = oracle::random_connected(2 + rep % 9, 0.3, rng);
    auto d = oracle::floyd_warshall(net);
    auto sums = distance_sums(net);
    auto c = closeness_centrality(net);
    for (NodeId i = 0; i < net.size(); ++i) {
      std::uint64_t s = std::accumulate(d[i].begin(), d[i].end(), std::uint64_t{0});
      ASSERT_EQ(sums[i], s);  // integer equality => the rationals 1/s agree
      EXPECT_EQ(c[i], 1.0 / static_cast<double>(s));
    }
  }
}

TEST(Closeness, RejectsDisconnected) {
  std::vector<Edge> e{{0, 1}, {2, 3}};
  EXPECT_THROW(closeness_centrality(Network(4, e)), DisconnectedGraphError);
}

TEST(LayeredTargets, Fixtures) {
  EXPECT_EQ(one_based(target_set_layered(path_graph(5)).nodes), (Ids{2, 4}));
  auto k4 = target_set_layered(complete_graph(4));
  EXPECT_EQ(one_based(k4.nodes), (Ids{1, 2, 3, 4}));
  EXPECT_EQ(k4.kind, TargetKind::kLayered);
  EXPECT_EQ(one_based(target_set_layered(star_graph(5)).nodes), (Ids{1}));
}

TEST(DenseTargets, Fixtures) {
  auto p5 = target_set_dense(path_graph(5), false);
  EXPECT_EQ(one_based(p5.selection_order), (Ids{3, 2, 4}));
  EXPECT_EQ(one_based(p5.nodes), (Ids{2, 3, 4}));
  auto pruned = target_set_dense(path_graph(5), true);
  EXPECT_EQ(one_based(pruned.nodes), (Ids{2, 4}));
  EXPECT_EQ(pruned.kind, TargetKind::kDensePruned);
  EXPECT_EQ(one_based(target_set_dense(complete_graph(4), false).nodes), (Ids{1}));
}

TEST(Targets, CoverageAndStructuralProperties) {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 300; ++rep) {
    Network net = oracle::random_connected(1 + rep % 14, 0.15 + 0.05 * (rep % 6), rng);
    auto layered = target_set_layered(net);
    auto dense = target_set_dense(net, false);
    auto pruned = target_set_dense(net, true);
    ASSERT_FALSE(layered.nodes.empty());
    EXPECT_TRUE(covers(net, layered.nodes));
    EXPECT_TRUE(covers(net, dense.nodes));
    EXPECT_TRUE(covers(net, pruned.nodes));

    // Members chosen before the break branch are never outer nodes of the
    // original network.
    const auto outer = oracle::outer(net);
    for (std::size_t k = 0; k < layered.remainder_start; ++k) {
      EXPECT_FALSE(std::binary_search(outer.begin(), outer.end(),
                                      layered.selection_order[k]))
          << "node " << layered.selection_order[k] + 1;
    }
    if (outer.empty()) EXPECT_EQ(layered.nodes.size(), net.size());

    // Pruned output is minimal with respect to single removals.
    if (pruned.nodes.size() > 1) {
      for (std::size_t k = 0; k < pruned.nodes.size(); ++k) {
        auto fewer = pruned.nodes;
        fewer.erase(fewer.begin() + static_cast<long>(k));
        EXPECT_FALSE(covers(net, fewer));
      }
    }
    EXPECT_TRUE(std::is_sorted(layered.nodes.begin(), layered.nodes.end()));
  }
}

TEST(Permutation, ValidatesAndComputesCycles) {
  EXPECT_THROW(Permutation({0, 0, 1}), Error);
  EXPECT_THROW(Permutation({0, 3, 1}), Error);
  Permutation p({1, 2, 0, 4, 3});
  EXPECT_EQ(p.cycles(), (std::vector<Ids>{{0, 1, 2}, {3, 4}}));
  EXPECT_EQ(p.order(), 6u);
}

TEST(Automorphism, Fixtures) {
  auto c4 = verify_automorphism(cycle_graph(4), Permutation({1, 2, 3, 0}));
  EXPECT_TRUE(c4.is_automorphism);
  EXPECT_EQ(c4.orbits, (std::vector<Ids>{{0, 1, 2, 3}}));
  EXPECT_EQ(c4.order, 4u);

  auto p3 = verify_automorphism(path_graph(3), Permutation({2, 1, 0}));
  EXPECT_TRUE(p3.is_automorphism);
  EXPECT_EQ(p3.orbits, (std::vector<Ids>{{0, 2}, {1}}));
  EXPECT_EQ(p3.order, 2u);

  auto bad = verify_automorphism(path_graph(3), Permutation({1, 0, 2}));
  EXPECT_FALSE(bad.is_automorphism);
  EXPECT_TRUE(bad.orbits.empty());
}

TEST(Automorphism, OrbitAverageIsInvariant) {
  Permutation rot({1, 2, 3, 4, 5, 0});
  std::vector<double> b{1, 2, 3, 4, 5, 6};
  auto avg = orbit_average(rot, b);
  for (double v : avg) EXPECT_DOUBLE_EQ(v, 3.5);
  Permutation refl({5, 4, 3, 2, 1, 0});
  auto r = orbit_average(refl, b);
  EXPECT_DOUBLE_EQ(r[0], 3.5);
  EXPECT_DOUBLE_EQ(r[2], 3.5);
  EXPECT_DOUBLE_EQ(std::accumulate(r.begin(), r.end(), 0.0), 21.0);
}
