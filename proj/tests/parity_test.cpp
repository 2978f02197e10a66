#include <gtest/gtest.h>

#include "oddcolor/generators.hpp"
#include "oddcolor/parity.hpp"
#include "oddcolor/verify.hpp"
#include "oracles.hpp"

namespace {

using namespace oddcolor;

OnlineGraph petersen() {
  // Outer 5-cycle 0..4, spokes i -> i+5, inner pentagram on 5..9.
  return OnlineGraph::replay(
      InstanceStream::from_back_edges({{}, {0}, {1}, {2}, {0, 3}, {0}, {1}, {2, 5}, {3, 5, 6}, {4, 6, 7}}));
}

TEST(ExtendedLength, InfinityOrdersLast) {
  EXPECT_LT(ParityDistance::of(7), ParityDistance::infinity());
  EXPECT_FALSE(OddGirth::infinity().is_finite());
  EXPECT_EQ(OddGirth::infinity().to_string(), "inf");
  EXPECT_EQ(OddGirth::of(5).to_string(), "5");
  EXPECT_THROW((void)OddGirth::infinity().value(), std::logic_error);
}

TEST(EvenDistance, OddCycleGoesAroundTheLongWay) {
  // In C_g the neighbor of v is at even distance g - 1.
  for (std::size_t g : {3, 5, 9, 31}) {
    OnlineGraph c = OnlineGraph::replay(gen_odd_cycle(g));
    EXPECT_EQ(even_distance(c, 0, 1), ParityDistance::of(g - 1)) << g;
    EXPECT_EQ(even_distance(c, 0, 2), ParityDistance::of(2)) << g;
    EXPECT_EQ(even_distance(c, 2, 2), ParityDistance::of(0));
  }
}

TEST(EvenDistance, BipartiteNeighborsHaveNoEvenWalk) {
  OnlineGraph p = OnlineGraph::replay(InstanceStream::from_back_edges({{}, {0}, {1}, {}}));
  EXPECT_FALSE(even_distance(p, 0, 1).is_finite());
  EXPECT_EQ(even_distance(p, 0, 2), ParityDistance::of(2));
  EXPECT_FALSE(even_distance(p, 0, 3).is_finite());
  EXPECT_THROW(even_distance(p, 0, 9), GraphError);
}

TEST(EvenDiameter, WalksMayLeaveTheSet) {
  OnlineGraph c = OnlineGraph::replay(gen_odd_cycle(7));
  VertexId both[] = {0, 1};
  auto w = even_diameter_witness(c, both);
  EXPECT_EQ(w.value, ParityDistance::of(6));
  EXPECT_NE(w.first, w.second);
  VertexId single[] = {4};
  EXPECT_EQ(even_diameter(c, single), ParityDistance::of(0));
  EXPECT_THROW(even_diameter(c, std::span<const VertexId>{}), std::invalid_argument);
}

TEST(OddGirth, KnownFamilies) {
  EXPECT_EQ(odd_girth(OnlineGraph::replay(gen_odd_cycle(3))), OddGirth::of(3));
  EXPECT_EQ(odd_girth(OnlineGraph::replay(gen_odd_cycle(31))), OddGirth::of(31));
  EXPECT_EQ(odd_girth(petersen()), OddGirth::of(5));
  EXPECT_EQ(odd_girth(OnlineGraph::replay(gen_subdivided_clique(5, 11))), OddGirth::of(33));
  EXPECT_FALSE(odd_girth(OnlineGraph::replay(gen_ff_adversary(20))).is_finite());
  EXPECT_TRUE(is_bipartite(OnlineGraph::replay(gen_ff_adversary(20))));
  EXPECT_FALSE(is_bipartite(petersen()));
  EXPECT_FALSE(odd_girth(OnlineGraph{}).is_finite());
}

TEST(Oracle, WalkDpRefusesLargeGraphs) {
  OnlineGraph big = OnlineGraph::replay(gen_odd_cycle(kOracleMaxVertices + 1));
  EXPECT_THROW(oracle_odd_girth(big), std::length_error);
}

// Parity BFS, the bitmask walk DP and the test-side Floyd-Warshall must agree
// on every pair of 200 seeded random graphs.
TEST(Oracle, ThreeImplementationsAgreeOnRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    std::size_t n = 2 + seed % 11;
    double p = 0.15 + 0.05 * static_cast<double>(seed % 8);
    InstanceStream s = gen_random_graph(n, p, seed);
    OnlineGraph g = OnlineGraph::replay(s);
    oracle::ParityApsp apsp(s);

    auto og = odd_girth(g);
    ASSERT_EQ(og, oracle_odd_girth(g)) << "seed " << seed;
    ASSERT_EQ(og.is_finite() ? og.value() : oracle::kInf, apsp.odd_girth()) << "seed " << seed;
    ASSERT_EQ(is_bipartite(g), !og.is_finite());

    for (VertexId a = 0; a < n; ++a) {
      auto row = even_distances_from(g, a);
      for (VertexId b = 0; b < n; ++b) {
        auto d = even_distance(g, a, b);
        ASSERT_EQ(d, row[b]);
        ASSERT_EQ(d, oracle_even_distance(g, a, b)) << "seed " << seed << " pair " << a << "," << b;
        ASSERT_EQ(d.is_finite() ? d.value() : oracle::kInf, apsp.even(a, b)) << "seed " << seed;
      }
    }
  }
}

TEST(BruteChromatic, SmallGraphs) {
  EXPECT_EQ(brute_chromatic(OnlineGraph::replay(gen_odd_cycle(5))), 3u);
  EXPECT_EQ(brute_chromatic(petersen()), 3u);
  EXPECT_EQ(brute_chromatic(OnlineGraph::replay(gen_ff_adversary(4))), 2u);
  EXPECT_EQ(brute_chromatic(OnlineGraph::replay(InstanceStream::from_back_edges({{}, {0}, {0, 1}, {0, 1, 2}}))), 4u);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    InstanceStream s = gen_random_graph(7, 0.45, seed);
    EXPECT_EQ(brute_chromatic(OnlineGraph::replay(s)), oracle::chromatic_number(s)) << seed;
  }
}

}  // namespace
