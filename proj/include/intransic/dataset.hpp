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

// Pairwise outcome records and their collapsed (a, b, n_a, n_b) form.
//
// A Dataset is immutable once built. The player table is shared between a
// dataset and every fold or holdout split derived from it, so ids stay
// comparable across splits.

#ifndef INTRANSIC_DATASET_HPP_
#define INTRANSIC_DATASET_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "intransic/common.hpp"

namespace intransic {

// Bidirectional map between dense ids 0..M-1 and unique string labels.
class PlayerTable {
 public:
  PlayerTable() = default;

  explicit PlayerTable(std::vector<std::string> labels) {
    for (auto& label : labels) {
      if (index_.contains(label)) {
        throw Error("duplicate player label '" + label + "'");
      }
      index_.emplace(label, static_cast<PlayerId>(labels_.size()));
      labels_.push_back(std::move(label));
    }
  }

  // Returns the id of `label`, registering it if it is new.
  PlayerId intern(std::string_view label) {
    auto it = index_.find(std::string(label));
    if (it != index_.end()) return it->second;
    const auto id = static_cast<PlayerId>(labels_.size());
    labels_.emplace_back(label);
    index_.emplace(labels_.back(), id);
    return id;
  }

  std::optional<PlayerId> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& label(PlayerId id) const { return labels_.at(id); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  bool contains(PlayerId id) const { return id < labels_.size(); }

  // Convenience for tests and generators: players labeled "0".."n-1".
  static PlayerTable numbered(std::size_t n) {
    PlayerTable table;
    for (std::size_t i = 0; i < n; ++i) table.intern(std::to_string(i));
    return table;
  }

  friend bool operator==(const PlayerTable& x, const PlayerTable& y) {
    return x.labels_ == y.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, PlayerId> index_;
};

using PlayerTablePtr = std::shared_ptr<const PlayerTable>;

// One observed game between a and b.
struct RawOutcome {
  PlayerId a = 0;
  PlayerId b = 0;
  bool a_won = true;
};

// Aggregated outcomes for one unordered pair. Inside a Dataset, a < b.
struct Matchup {
  PlayerId a = 0;
  PlayerId b = 0;
  std::uint64_t n_a = 0;
  std::uint64_t n_b = 0;

  std::uint64_t total() const { return n_a + n_b; }
  Matchup flipped() const { return {b, a, n_b, n_a}; }

  friend bool operator==(const Matchup&, const Matchup&) = default;
};

class Dataset {
 public:
  Dataset() : players_(std::make_shared<const PlayerTable>()) {}

  const PlayerTable& players() const { return *players_; }
  const PlayerTablePtr& player_table() const { return players_; }
  const std::vector<Matchup>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  std::size_t num_players() const { return players_->size(); }

  std::uint64_t total_outcomes() const {
    std::uint64_t total = 0;
    for (const auto& r : records_) total += r.total();
    return total;
  }

  // Players with at least one recorded outcome.
  std::vector<bool> observed_players() const {
    std::vector<bool> seen(num_players(), false);
    for (const auto& r : records_) seen[r.a] = seen[r.b] = true;
    return seen;
  }

  // Counts for the pair oriented as (a, b), if the pair was observed.
  std::optional<Matchup> find(PlayerId a, PlayerId b) const {
    const Matchup key{std::min(a, b), std::max(a, b), 0, 0};
    auto it = std::lower_bound(
        records_.begin(), records_.end(), key, [](const auto& x, const auto& y) {
          return std::pair(x.a, x.b) < std::pair(y.a, y.b);
        });
    if (it == records_.end() || it->a != key.a || it->b != key.b) {
      return std::nullopt;
    }
    return a == it->a ? *it : it->flipped();
  }

  friend bool operator==(const Dataset& x, const Dataset& y) {
    return *x.players_ == *y.players_ && x.records_ == y.records_;
  }

 private:
  friend Dataset aggregate(std::span<const Matchup>, PlayerTablePtr);

  Dataset(PlayerTablePtr players, std::vector<Matchup> records)
      : players_(std::move(players)), records_(std::move(records)) {}

  PlayerTablePtr players_;
  std::vector<Matchup> records_;  // sorted by (a, b)
};

// Merges matchups into one canonical record per unordered pair. Input rows
// may use either orientation and repeat pairs.
inline Dataset aggregate(std::span<const Matchup> rows, PlayerTablePtr players) {
  if (!players) throw Error("aggregate: null player table");
  std::map<std::pair<PlayerId, PlayerId>, std::pair<std::uint64_t, std::uint64_t>>
      counts;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Matchup& row = rows[i];
    if (!players->contains(row.a) || !players->contains(row.b)) {
      throw RecordError(i, "unknown player id");
    }
    if (row.a == row.b) throw RecordError(i, "self-match");
    if (row.total() == 0) throw RecordError(i, "matchup without outcomes");
    const Matchup m = row.a < row.b ? row : row.flipped();
    auto& c = counts[{m.a, m.b}];
    c.first += m.n_a;
    c.second += m.n_b;
  }
  std::vector<Matchup> records;
  records.reserve(counts.size());
  for (const auto& [pair, c] : counts) {
    records.push_back({pair.first, pair.second, c.first, c.second});
  }
  return Dataset(std::move(players), std::move(records));
}

// Collapses individual outcomes into per-pair counts.
inline Dataset ingest(std::span<const RawOutcome> raw, PlayerTablePtr players) {
  std::vector<Matchup> rows;
  rows.reserve(raw.size());
  for (const auto& o : raw) {
    rows.push_back({o.a, o.b, o.a_won ? 1u : 0u, o.a_won ? 0u : 1u});
  }
  return aggregate(rows, std::move(players));
}

// Re-expresses `d` over another player table, matching players by label.
inline Dataset remap(const Dataset& d, PlayerTablePtr target) {
  std::vector<Matchup> rows;
  rows.reserve(d.size());
  auto lookup = [&](PlayerId p) {
    auto id = target->find(d.players().label(p));
    if (!id) throw Error("player '" + d.players().label(p) + "' is unknown to the target table");
    return *id;
  };
  for (const auto& r : d.records()) rows.push_back({lookup(r.a), lookup(r.b), r.n_a, r.n_b});
  return aggregate(rows, std::move(target));
}

// Expands every record into its individual outcomes, in record order with
// a's wins first.
inline std::vector<RawOutcome> expand(const Dataset& d) {
  std::vector<RawOutcome> out;
  out.reserve(d.total_outcomes());
  for (const auto& r : d.records()) {
    for (std::uint64_t i = 0; i < r.n_a; ++i) out.push_back({r.a, r.b, true});
    for (std::uint64_t i = 0; i < r.n_b; ++i) out.push_back({r.a, r.b, false});
  }
  return out;
}

struct Fold {
  Dataset train;
  Dataset test;
};

// Shuffles individual outcomes and cuts them into k contiguous chunks whose
// sizes differ by at most one; chunk i is the test set of fold i.
inline std::vector<Fold> split_folds(const Dataset& d, std::size_t k,
                                     std::uint64_t seed) {
  if (k < 2) throw Error("split_folds: k must be at least 2");
  if (d.empty()) throw Error("split_folds: empty dataset");
  std::vector<RawOutcome> outcomes = expand(d);
  if (k > outcomes.size()) {
    throw Error("split_folds: k=" + std::to_string(k) + " exceeds the " +
                std::to_string(outcomes.size()) + " available outcomes");
  }
  std::mt19937_64 rng(seed);
  std::shuffle(outcomes.begin(), outcomes.end(), rng);

  const std::size_t n = outcomes.size();
  std::vector<std::size_t> bounds(k + 1);
  for (std::size_t i = 0; i <= k; ++i) bounds[i] = i * n / k;

  std::vector<Fold> folds;
  folds.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<RawOutcome> train;
    std::vector<RawOutcome> test;
    train.reserve(n - (bounds[i + 1] - bounds[i]));
    for (std::size_t j = 0; j < n; ++j) {
      (j >= bounds[i] && j < bounds[i + 1] ? test : train).push_back(outcomes[j]);
    }
    folds.push_back({ingest(train, d.player_table()), ingest(test, d.player_table())});
  }
  return folds;
}

struct Holdout {
  Dataset train;
  Dataset holdout;
};

// Moves round(fraction * outcomes) randomly chosen outcomes into `holdout`,
// keeping at least one outcome on each side when fraction > 0 and the
// dataset has two or more outcomes.
inline Holdout split_holdout(const Dataset& d, double fraction,
                             std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw Error("split_holdout: fraction must lie in [0, 1)");
  }
  std::vector<RawOutcome> outcomes = expand(d);
  const std::size_t n = outcomes.size();
  auto held = static_cast<std::size_t>(std::llround(fraction * n));
  if (fraction > 0.0 && n >= 2) held = std::clamp<std::size_t>(held, 1, n - 1);
  if (held == 0) return {d, ingest({}, d.player_table())};

  std::mt19937_64 rng(seed);
  std::shuffle(outcomes.begin(), outcomes.end(), rng);
  std::span<const RawOutcome> all(outcomes);
  return {ingest(all.subspan(held), d.player_table()),
          ingest(all.first(held), d.player_table())};
}

}  // namespace intransic

#endif  // INTRANSIC_DATASET_HPP_
