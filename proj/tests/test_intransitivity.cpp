// Copyright 2026 The Intransic Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "intransic/intransic.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace intransic {
namespace {

using testing::Cycle;
using testing::oracle_cycles;
using testing::oracle_has_cycle;
using testing::oracle_triangles;

DominanceGraph toy_graph() { return build_dominance_graph(testing::toy_dataset()); }

DominanceGraph rps_graph() { return build_dominance_graph(testing::rps_dataset()); }

// --- examples ------------------------------------------------------------

TEST(DominanceGraph, MajorityAndTies) {
  const std::vector<Matchup> rows = {{0, 1, 10, 5}, {1, 2, 7, 7}, {0, 2, 0, 3}};
  const DominanceGraph g = build_dominance_graph(aggregate(rows, testing::numbered(3)));
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_FALSE(g.has_edge(1, 2));
  EXPECT_FALSE(g.has_edge(2, 1));
  EXPECT_TRUE(g.has_edge(2, 0));
  EXPECT_EQ(g.num_edges(), 2u);
}

TEST(DominanceGraph, ToyEdges) {
  // Labels 1..5 are ids 0..4.
  const std::vector<std::pair<PlayerId, PlayerId>> expected = {
      {0, 1}, {0, 3}, {1, 2}, {2, 0}, {2, 3}, {2, 4}, {3, 4}, {4, 0}};
  EXPECT_EQ(toy_graph().edges(), expected);
}

TEST(DominanceGraph, RejectsInvalidEdges) {
  EXPECT_THROW(DominanceGraph(2, {{0, 0}}), Error);
  EXPECT_THROW(DominanceGraph(2, {{0, 1}, {1, 0}}), Error);
  EXPECT_THROW(DominanceGraph(2, {{0, 2}}), Error);
}

TEST(HasCycle, Examples) {
  EXPECT_FALSE(has_cycle(DominanceGraph(3, {{0, 1}, {1, 2}, {0, 2}})));
  EXPECT_TRUE(has_cycle(rps_graph()));
  EXPECT_TRUE(has_cycle(toy_graph()));
  EXPECT_FALSE(has_cycle(DominanceGraph(0, {})));
}

TEST(IntransAt3, Examples) {
  const TriangleStats rps = intrans_at_3(rps_graph());
  EXPECT_EQ(rps.triangles, 1u);
  EXPECT_DOUBLE_EQ(rps.ratio, 0.5);
  const TriangleStats toy = intrans_at_3(toy_graph());
  EXPECT_EQ(toy.triangles, 2u);
  EXPECT_DOUBLE_EQ(toy.ratio, 0.10);
  EXPECT_EQ(intrans_at_3(DominanceGraph(2, {{0, 1}})).ratio, 0.0);
}

TEST(PlayersInTriangles, Examples) {
  EXPECT_EQ(players_in_triangles(rps_graph()), (std::vector<PlayerId>{0, 1, 2}));
  EXPECT_EQ(players_in_triangles(toy_graph()), (std::vector<PlayerId>{0, 1, 2, 3, 4}));
  EXPECT_TRUE(players_in_triangles(DominanceGraph(3, {{0, 1}, {1, 2}, {0, 2}})).empty());
}

TEST(EnumerateCycles, Examples) {
  const CycleEnumeration rps = enumerate_cycles(rps_graph(), 10);
  ASSERT_EQ(rps.cycles.size(), 1u);
  EXPECT_EQ(rps.cycles[0].size(), 3u);
  EXPECT_FALSE(rps.truncated);

  const CycleEnumeration toy = enumerate_cycles(toy_graph(), 100);
  EXPECT_FALSE(toy.truncated);
  const std::set<Cycle> found(toy.cycles.begin(), toy.cycles.end());
  EXPECT_TRUE(found.contains(Cycle{0, 1, 2}));
  EXPECT_TRUE(found.contains(Cycle{0, 3, 4}));
  EXPECT_TRUE(found.contains(Cycle{0, 1, 2, 3, 4}));
  EXPECT_EQ(found, oracle_cycles(toy_graph()));

  const CycleEnumeration dag = enumerate_cycles(DominanceGraph(3, {{0, 1}, {1, 2}}), 10);
  EXPECT_TRUE(dag.cycles.empty());
  EXPECT_FALSE(dag.truncated);
}

TEST(EnumerateCycles, CapTruncates) {
  const std::size_t total = oracle_cycles(toy_graph()).size();
  ASSERT_GE(total, 3u);
  const CycleEnumeration capped = enumerate_cycles(toy_graph(), 2);
  EXPECT_EQ(capped.cycles.size(), 2u);
  EXPECT_TRUE(capped.truncated);
  const CycleEnumeration exact = enumerate_cycles(toy_graph(), total);
  EXPECT_EQ(exact.cycles.size(), total);
  EXPECT_FALSE(exact.truncated);
  const CycleEnumeration none = enumerate_cycles(toy_graph(), 0);
  EXPECT_TRUE(none.cycles.empty());
  EXPECT_TRUE(none.truncated);
}

TEST(Stats, Examples) {
  const IntransReport toy = stats(testing::toy_dataset());
  EXPECT_TRUE(toy.is_intrans);
  EXPECT_EQ(toy.triangles, 2u);
  EXPECT_DOUBLE_EQ(toy.intrans_at_3, 0.10);
  EXPECT_EQ(toy.players_in_triangles.size(), 5u);
  EXPECT_EQ(toy.num_players, 5u);
  EXPECT_EQ(toy.num_outcomes, 96u);

  const std::vector<Matchup> one = {{0, 1, 1, 0}};
  const IntransReport single = stats(aggregate(one, testing::numbered(2)));
  EXPECT_FALSE(single.is_intrans);
  EXPECT_EQ(single.triangles, 0u);
  EXPECT_EQ(single.intrans_at_3, 0.0);
  EXPECT_TRUE(single.players_in_triangles.empty());
  EXPECT_EQ(single.num_players, 2u);

  const IntransReport empty = stats(Dataset());
  EXPECT_FALSE(empty.is_intrans);
  EXPECT_EQ(empty.num_players, 0u);
}

TEST(Stats, TableAndJson) {
  const Dataset d = testing::toy_dataset();
  const IntransReport r = stats(d);
  const std::string table = format_stats_table({{"toy", r}});
  EXPECT_NE(table.find("Intrans@3"), std::string::npos);
  EXPECT_NE(table.find("10.00%"), std::string::npos);
  EXPECT_NE(table.find("5/5"), std::string::npos);
  EXPECT_EQ(table.find(" \n"), std::string::npos);
  const auto j = to_json(r, d.players());
  EXPECT_EQ(j["triangles"], 2);
  EXPECT_EQ(j["player_intrans_at_3"], 5);
  EXPECT_EQ(j["players_in_triangles"][0], "1");
}

// --- property suites -----------------------------------------------------

TEST(Oracle, RandomGraphsMatchBruteForce) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng() % 8;
    const double density = 0.2 + 0.8 * static_cast<double>(rng() % 100) / 100.0;
    const DominanceGraph g = testing::random_tournament(n, density, rng);
    std::set<PlayerId> members;
    EXPECT_EQ(intrans_at_3(g).triangles, oracle_triangles(g, &members));
    const auto got = players_in_triangles(g);
    EXPECT_EQ(std::set<PlayerId>(got.begin(), got.end()), members);
    EXPECT_EQ(has_cycle(g), oracle_has_cycle(g));
    if (n <= 6) {
      const CycleEnumeration all = enumerate_cycles(g, kUnlimitedCycles);
      EXPECT_FALSE(all.truncated);
      const std::set<Cycle> found(all.cycles.begin(), all.cycles.end());
      EXPECT_EQ(found.size(), all.cycles.size());  // no duplicates
      EXPECT_EQ(found, oracle_cycles(g));
      EXPECT_EQ(has_cycle(g), !all.cycles.empty());
    }
  }
}

TEST(Oracle, ReversalInvariance) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const DominanceGraph g = testing::random_tournament(3 + rng() % 6, 0.8, rng);
    const DominanceGraph r = g.reversed();
    EXPECT_EQ(intrans_at_3(g).triangles, intrans_at_3(r).triangles);
    EXPECT_EQ(intrans_at_3(g).ratio, intrans_at_3(r).ratio);
    EXPECT_EQ(players_in_triangles(g), players_in_triangles(r));
  }
}

TEST(Oracle, ReportInvariants) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + rng() % 6;
    const DominanceGraph g = testing::random_tournament(n, 1.0, rng);
    const TriangleStats t = intrans_at_3(g);
    const double nd = static_cast<double>(n);
    EXPECT_DOUBLE_EQ(t.ratio, static_cast<double>(t.triangles) / (nd * (nd - 1) * (nd - 2) / 3));
    EXPECT_GE(t.ratio, 0.0);
    EXPECT_LE(t.ratio, 1.0);
    EXPECT_LE(players_in_triangles(g).size(), n);
  }
}

TEST(EnumerateCycles, LargerCompleteTournamentIsCapped) {
  std::mt19937_64 rng(9);
  const DominanceGraph g = testing::random_tournament(14, 1.0, rng);
  const CycleEnumeration c = enumerate_cycles(g, 500);
  if (has_cycle(g)) {
    EXPECT_FALSE(c.cycles.empty());
  }
  EXPECT_LE(c.cycles.size(), 500u);
  for (const auto& cycle : c.cycles) {
    EXPECT_EQ(*std::min_element(cycle.begin(), cycle.end()), cycle.front());
    std::set<PlayerId> unique(cycle.begin(), cycle.end());
    EXPECT_EQ(unique.size(), cycle.size());
  }
}

}  // namespace
}  // namespace intransic
