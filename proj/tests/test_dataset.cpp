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

#include <map>
#include <random>

#include "intransic/intransic.hpp"
#include "test_util.hpp"

namespace intransic {
namespace {

using testing::numbered;
using testing::toy_dataset;

TEST(PlayerTable, InternsDenseIds) {
  PlayerTable t;
  EXPECT_EQ(t.intern("rock"), 0u);
  EXPECT_EQ(t.intern("paper"), 1u);
  EXPECT_EQ(t.intern("rock"), 0u);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.label(1), "paper");
  EXPECT_EQ(t.find("paper"), std::optional<PlayerId>(1));
  EXPECT_FALSE(t.find("scissors").has_value());
}

TEST(PlayerTable, RejectsDuplicateLabels) {
  EXPECT_THROW(PlayerTable(std::vector<std::string>{"a", "b", "a"}), Error);
}

TEST(Ingest, CountsOutcomes) {
  const std::vector<RawOutcome> raw = {{0, 1, true}, {0, 1, false}, {0, 1, true}};
  const Dataset d = ingest(raw, numbered(2));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.records()[0], (Matchup{0, 1, 2, 1}));
}

TEST(Ingest, EmptyInput) {
  const Dataset d = ingest({}, numbered(3));
  EXPECT_TRUE(d.empty());
  EXPECT_EQ(d.total_outcomes(), 0u);
  EXPECT_EQ(d.num_players(), 3u);
}

TEST(Ingest, CanonicalizesOrientation) {
  const std::vector<RawOutcome> raw = {{2, 0, true}, {0, 2, true}, {2, 0, true}};
  const Dataset d = ingest(raw, numbered(3));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.records()[0], (Matchup{0, 2, 1, 2}));
  EXPECT_EQ(d.find(2, 0), (Matchup{2, 0, 2, 1}));
  EXPECT_FALSE(d.find(0, 1).has_value());
}

TEST(Ingest, RejectsSelfMatchWithRow) {
  const std::vector<RawOutcome> raw = {{0, 1, true}, {1, 1, true}};
  try {
    ingest(raw, numbered(2));
    FAIL() << "expected RecordError";
  } catch (const RecordError& e) {
    EXPECT_EQ(e.row(), 1u);
  }
}

TEST(Ingest, RejectsUnknownPlayerWithRow) {
  const std::vector<RawOutcome> raw = {{0, 1, true}, {0, 1, true}, {0, 7, false}};
  try {
    ingest(raw, numbered(2));
    FAIL() << "expected RecordError";
  } catch (const RecordError& e) {
    EXPECT_EQ(e.row(), 2u);
  }
}

TEST(Aggregate, ToyGameTotals) {
  const Dataset d = toy_dataset();
  EXPECT_EQ(d.size(), 8u);
  EXPECT_EQ(d.total_outcomes(), 96u);
  int big = 0, small = 0;
  for (const auto& r : d.records()) {
    if (r.n_a == 10 && r.n_b == 5) ++big;
    if (r.n_a == 1 && r.n_b == 2) ++small;
  }
  EXPECT_EQ(big, 6);
  EXPECT_EQ(small, 2);
}

TEST(Aggregate, RejectsZeroOutcomeRow) {
  const std::vector<Matchup> rows = {{0, 1, 0, 0}};
  EXPECT_THROW(aggregate(rows, numbered(2)), RecordError);
}

TEST(Ingest, ConservesOutcomesProperty) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    std::vector<RawOutcome> raw;
    const std::size_t len = rng() % 200;
    for (std::size_t i = 0; i < len; ++i) {
      const auto a = static_cast<PlayerId>(rng() % n);
      auto b = static_cast<PlayerId>(rng() % n);
      if (a == b) b = static_cast<PlayerId>((b + 1) % n);
      raw.push_back({a, b, (rng() & 1) != 0});
    }
    const Dataset d = ingest(raw, numbered(n));
    EXPECT_EQ(d.total_outcomes(), raw.size());
    std::map<std::pair<PlayerId, PlayerId>, int> seen;
    for (const auto& r : d.records()) {
      EXPECT_LT(r.a, r.b);
      EXPECT_GE(r.total(), 1u);
      EXPECT_EQ(++seen[std::pair(r.a, r.b)], 1);
    }
    EXPECT_EQ(ingest(expand(d), d.player_table()), d);
  }
}

TEST(SplitFolds, IdenticalOutcomesSpreadEvenly) {
  const std::vector<Matchup> rows = {{0, 1, 3, 0}};
  const Dataset d = aggregate(rows, numbered(2));
  const auto folds = split_folds(d, 3, 17);
  ASSERT_EQ(folds.size(), 3u);
  for (const auto& f : folds) {
    ASSERT_EQ(f.test.size(), 1u);
    EXPECT_EQ(f.test.records()[0], (Matchup{0, 1, 1, 0}));
    EXPECT_EQ(f.train.total_outcomes(), 2u);
  }
}

TEST(SplitFolds, ToyGameFoldSizes) {
  const auto folds = split_folds(toy_dataset(), 3, 1);
  for (const auto& f : folds) {
    EXPECT_EQ(f.test.total_outcomes(), 32u);
    EXPECT_EQ(f.train.total_outcomes(), 64u);
  }
}

TEST(SplitFolds, Deterministic) {
  const Dataset d = toy_dataset();
  const auto x = split_folds(d, 4, 99);
  const auto y = split_folds(d, 4, 99);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(x[i].train, y[i].train);
    EXPECT_EQ(x[i].test, y[i].test);
  }
}

TEST(SplitFolds, PartitionsOutcomesProperty) {
  const Dataset d = toy_dataset();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (std::size_t k : {2u, 3u, 5u, 7u}) {
      const auto folds = split_folds(d, k, seed);
      std::map<std::pair<PlayerId, PlayerId>, std::pair<std::uint64_t, std::uint64_t>> sum;
      std::uint64_t total = 0;
      for (const auto& f : folds) {
        total += f.test.total_outcomes();
        EXPECT_EQ(f.train.total_outcomes() + f.test.total_outcomes(), 96u);
        for (const auto& r : f.test.records()) {
          sum[{r.a, r.b}].first += r.n_a;
          sum[{r.a, r.b}].second += r.n_b;
        }
        const auto size = f.test.total_outcomes();
        EXPECT_TRUE(size == 96 / k || size == 96 / k + 1);
      }
      EXPECT_EQ(total, 96u);
      for (const auto& r : d.records()) {
        EXPECT_EQ(sum[std::pair(r.a, r.b)], std::make_pair(r.n_a, r.n_b));
      }
    }
  }
}

TEST(SplitFolds, Errors) {
  EXPECT_THROW(split_folds(toy_dataset(), 1, 0), Error);
  EXPECT_THROW(split_folds(ingest({}, numbered(2)), 3, 0), Error);
  const std::vector<Matchup> rows = {{0, 1, 1, 1}};
  EXPECT_THROW(split_folds(aggregate(rows, numbered(2)), 3, 0), Error);
}

TEST(SplitHoldout, KeepsBothSidesNonEmpty) {
  const std::vector<Matchup> rows = {{0, 1, 1, 1}};
  const Holdout h = split_holdout(aggregate(rows, numbered(2)), 0.1, 3);
  EXPECT_EQ(h.train.total_outcomes(), 1u);
  EXPECT_EQ(h.holdout.total_outcomes(), 1u);
}

TEST(Remap, MatchesByLabel) {
  const auto source = std::make_shared<const PlayerTable>(std::vector<std::string>{"b", "a"});
  const auto target =
      std::make_shared<const PlayerTable>(std::vector<std::string>{"a", "b", "c"});
  const std::vector<Matchup> rows = {{0, 1, 4, 1}};
  const Dataset d = remap(aggregate(rows, source), target);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.records()[0], (Matchup{0, 1, 1, 4}));
  EXPECT_EQ(d.num_players(), 3u);
  const auto other = std::make_shared<const PlayerTable>(std::vector<std::string>{"a"});
  EXPECT_THROW(remap(aggregate(rows, source), other), Error);
}

}  // namespace
}  // namespace intransic
