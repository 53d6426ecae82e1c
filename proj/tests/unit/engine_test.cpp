#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "polya/error.hpp"
#include "polya/random.hpp"
#include "polya/trace.hpp"
#include "polya/urn_state.hpp"

using namespace polya;

namespace {

std::vector<double> uniforms(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> y(n);
  for (auto& v : y) v = u(rng);
  return y;
}

}  // namespace

TEST(UrnState, InitialExposures) {
  Network one = path_graph(1);
  std::vector<double> r1{1}, b1{1};
  EXPECT_DOUBLE_EQ(UrnState(one, r1, b1).exposure(0), 0.5);

  Network p3 = path_graph(3);
  std::vector<double> r{1, 1, 1}, b{1, 0, 1};
  UrnState s(p3, r, b);
  EXPECT_DOUBLE_EQ(s.exposure(0), 2.0 / 3);
  EXPECT_DOUBLE_EQ(s.exposure(1), 3.0 / 5);
  EXPECT_DOUBLE_EQ(s.exposure(2), 2.0 / 3);
  EXPECT_NEAR(metrics(s).exposure, 29.0 / 45, 1e-15);
}

TEST(UrnState, RejectsEmptySuperUrnAndBadInput) {
  std::vector<Edge> e{{0, 1}};
  Network net(3, e);  // node 3 isolated
  std::vector<double> r{1, 1, 0}, b{1, 1, 0};
  EXPECT_THROW(UrnState(net, r, b), EmptyUrnError);
  Network p2 = path_graph(2);
  std::vector<double> neg{-1, 2}, ok{1, 1}, short_{1};
  EXPECT_THROW(UrnState(p2, neg, ok), Error);
  EXPECT_THROW(UrnState(p2, short_, ok), Error);
}

TEST(UrnState, OneStepHandUpdate) {
  Network one = path_graph(1);
  std::vector<double> r{1}, b{1}, y{0.4};
  UrnState s(one, r, b);
  auto z = s.step(Reinforcement::constant(1, 1, 1), y);
  EXPECT_EQ(z[0], 1);
  EXPECT_DOUBLE_EQ(s.red_mass(0), 2.0);
  EXPECT_DOUBLE_EQ(s.black_mass(0), 1.0);
  EXPECT_DOUBLE_EQ(s.exposure(0), 2.0 / 3);
  EXPECT_EQ(s.time(), 1u);
}

TEST(UrnState, CertainRedAndZeroUniforms) {
  Network p3 = path_graph(3);
  std::vector<double> r{1, 2, 3}, b{0, 0, 0};
  UrnState s(p3, r, b);
  std::vector<double> y{1.0, 1.0, 1.0};
  auto z = s.step(Reinforcement::constant(3, 1, 1), y);
  for (auto v : z) EXPECT_EQ(v, 1);
  auto m = metrics(s);
  EXPECT_EQ(m.susceptibility, 1.0);
  EXPECT_EQ(m.exposure, 1.0);

  std::vector<double> r2{1, 1, 1}, b2{5, 5, 5}, y0{0, 0, 0};
  UrnState t(p3, r2, b2);
  for (auto v : t.step(Reinforcement::constant(3, 1, 1), y0)) EXPECT_EQ(v, 1);
}

TEST(UrnState, StepValidatesInputs) {
  Network p2 = path_graph(2);
  std::vector<double> r{1, 1}, b{1, 1};
  UrnState s(p2, r, b);
  std::vector<double> y{0.5};
  EXPECT_THROW(s.step(Reinforcement::constant(2, 1, 1), y), Error);
  std::vector<double> y2{0.5, 0.5};
  Reinforcement bad{{1, -1}, {1, 1}};
  EXPECT_THROW(s.step(bad, y2), Error);
  EXPECT_EQ(s.time(), 0u);  // nothing applied
}

TEST(UrnState, ConditionalLawMatchesExposure) {
  // Fixed history, then 1e5 fresh uniforms for the next draw.
  Network net = cycle_graph(4);
  std::vector<double> r{1, 2, 0.5, 1}, b{2, 1, 1, 0.5};
  UrnState base(net, r, b);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 3; ++t) base.step(Reinforcement::constant(4, 1.5, 0.7), uniforms(rng, 4));

  constexpr int kSamples = 100000;
  std::vector<int> reds(4, 0);
  for (int k = 0; k < kSamples; ++k) {
    for (NodeId i = 0; i < 4; ++i) {
      reds[i] += draw_uniform(99, k, 0, i) <= base.exposure(i);
    }
  }
  for (NodeId i = 0; i < 4; ++i) {
    const double p = base.exposure(i);
    const double se = std::sqrt(p * (1 - p) / kSamples);
    EXPECT_NEAR(reds[i] / double(kSamples), p, 3 * se) << "node " << i;
  }
}

TEST(UrnState, PathwiseDomination) {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 100; ++rep) {
    Network net = oracle::random_connected(2 + rep % 9, 0.3, rng);
    const auto n = net.size();
    auto r = oracle::random_vector(n, 0.1, 3, rng);
    auto b = oracle::random_vector(n, 0, 3, rng);
    auto extra = oracle::random_vector(n, 0, 2, rng);
    std::vector<double> b_star(n);
    for (NodeId i = 0; i < n; ++i) b_star[i] = b[i] + (rep % 2 ? extra[i] : 0.0);
    UrnState lo(net, r, b_star), hi(net, r, b);
    for (int t = 0; t < 30; ++t) {
      Reinforcement d{oracle::random_vector(n, 0, 2, rng), oracle::random_vector(n, 0, 2, rng)};
      auto y = uniforms(rng, n);
      auto z_star = lo.step(d, y);
      auto z = hi.step(d, y);
      for (NodeId i = 0; i < n; ++i) ASSERT_LE(z_star[i], z[i]);
    }
  }
}

TEST(UrnState, ColorSwapSymmetry) {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 50; ++rep) {
    Network net = oracle::random_connected(2 + rep % 7, 0.4, rng);
    const auto n = net.size();
    auto r = oracle::random_vector(n, 0.1, 3, rng);
    auto b = oracle::random_vector(n, 0.1, 3, rng);
    UrnState a(net, r, b), mirror(net, b, r);
    for (int t = 0; t < 40; ++t) {
      auto dr = oracle::random_vector(n, 0, 2, rng);
      auto db = oracle::random_vector(n, 0, 2, rng);
      auto y = uniforms(rng, n);
      std::vector<double> y_flip(n);
      for (NodeId i = 0; i < n; ++i) y_flip[i] = 1.0 - y[i];
      a.step({dr, db}, y);
      auto z = a.last_draws();
      auto zm = mirror.step({db, dr}, y_flip, DrawRule::kOpen);
      for (NodeId i = 0; i < n; ++i) ASSERT_EQ(z[i], 1 - zm[i]);
    }
  }
}

TEST(UrnState, BallConservation) {
  std::mt19937_64 rng(14);
  Network net = oracle::random_connected(8, 0.3, rng);
  std::vector<double> r(8, 1.0), b(8, 2.0);
  UrnState s(net, r, b, {.keep_history = true});
  std::vector<Reinforcement> schedule;
  for (int t = 0; t < 60; ++t) {
    schedule.push_back({oracle::random_vector(8, 0, 3, rng), oracle::random_vector(8, 0, 3, rng)});
    s.step(schedule.back(), uniforms(rng, 8));
  }
  const auto& h = s.history();
  ASSERT_EQ(h.steps(), 60u);
  for (NodeId i = 0; i < 8; ++i) {
    double x = r[i] + b[i];
    for (std::size_t t = 1; t <= 60; ++t) {
      x += h.at(i, t) ? schedule[t - 1].red[i] : schedule[t - 1].black[i];
    }
    EXPECT_NEAR(s.total_mass(i), x, 1e-12 * x);
  }
}

TEST(UrnState, IncrementalMatchesRebuild) {
  std::mt19937_64 rng(15);
  Network net = oracle::random_connected(12, 0.3, rng);
  auto r = oracle::random_vector(12, 0.5, 2, rng);
  auto b = oracle::random_vector(12, 0.5, 2, rng);
  UrnState s(net, r, b);
  double prev_total = 0.0;
  for (int t = 0; t < 1000; ++t) {
    s.step({oracle::random_vector(12, 0, 5, rng), oracle::random_vector(12, 0, 5, rng)},
           uniforms(rng, 12));
    EXPECT_GE(s.total_mass(0), prev_total);
    prev_total = s.total_mass(0);
  }
  auto incremental = s.exposures();
  std::vector<double> red(12), black(12);
  for (NodeId i = 0; i < 12; ++i) {
    red[i] = s.red_mass(i);
    black[i] = s.black_mass(i);
  }
  auto scratch = oracle::super_fractions(net, red, black);
  for (NodeId i = 0; i < 12; ++i) EXPECT_NEAR(incremental[i], scratch[i], 1e-12);
  for (double v : incremental) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(UrnState, EmptyIndividualUrnReportsSuperProportion) {
  Network p3 = path_graph(3);
  std::vector<double> r{1, 0, 1}, b{1, 0, 3};
  UrnState s(p3, r, b);
  EXPECT_DOUBLE_EQ(s.urn_proportion(1), s.exposure(1));
  EXPECT_DOUBLE_EQ(s.urn_proportion(2), 0.25);
}

TEST(DrawHistory, ValidatesColumns) {
  DrawHistory h(2);
  std::vector<std::uint8_t> ok{1, 0}, bad{2, 0}, short_{1};
  h.append(ok);
  EXPECT_THROW(h.append(bad), Error);
  EXPECT_THROW(h.append(short_), Error);
  EXPECT_EQ(h.steps(), 1u);
  EXPECT_EQ(h.at(0, 1), 1);
}

TEST(Random, OpenUnitIntervalAndDeterminism) {
  EXPECT_GT(to_open_unit(0), 0.0);
  EXPECT_LT(to_open_unit(~std::uint64_t{0}), 1.0);
  EXPECT_EQ(draw_uniform(1, 2, 3, 4), draw_uniform(1, 2, 3, 4));
  EXPECT_NE(draw_uniform(1, 2, 3, 4), draw_uniform(1, 2, 4, 3));
  RandomStream a(5, 0), b(5, 0), c(5, 1);
  EXPECT_EQ(a.next_bits(), b.next_bits());
  EXPECT_NE(a.next_bits(), c.next_bits());
  std::vector<int> hist(7, 0);
  for (int k = 0; k < 70000; ++k) ++hist[a.below(7)];
  for (int v : hist) EXPECT_NEAR(v, 10000, 400);
}

TEST(Trace, CsvColumns) {
  Network p2 = path_graph(2);
  std::vector<double> r{1, 1}, b{1, 1}, y{0.1, 0.9};
  UrnState s(p2, r, b);
  TraceRecorder rec;
  s.step(Reinforcement::constant(2, 1, 1), y);
  rec.record(s);
  std::ostringstream os, sum;
  rec.write_csv(os);
  rec.write_summary_csv(sum);
  EXPECT_EQ(os.str(),
            "time,node,Z,U,S\n1,1,1,0.6666666666666666,0.5\n1,2,0,0.3333333333333333,0.5\n");
  EXPECT_EQ(sum.str(),
            "time,susceptibility,exposure,fraction_infected\n1,0.5,0.5,0.5\n");
}
