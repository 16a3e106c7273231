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

// Synthetic datasets with planted cyclic cliques.
//
// Player p0 is a pivot shared by every clique. A clique of size s adds s-1
// new players m1..m(s-1) and plants the cycle p0 -> m1 -> ... -> m(s-1) -> p0;
// its remaining pairs point from the lower to the higher position. Cliques
// are chained transitively: the last member of each clique beats every
// non-pivot member of all later cliques. Other pairs are never played.
//
// With sizes {3, 3} this is the five-player graph
//   0->1, 1->2, 2->0, 0->3, 3->4, 4->0, 2->3, 2->4
// which has exactly two directed triangles, {0,1,2} and {0,3,4}.

#ifndef INTRANSIC_SYNTH_HPP_
#define INTRANSIC_SYNTH_HPP_

#include <cstdint>
#include <memory>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "intransic/common.hpp"
#include "intransic/dataset.hpp"
#include "intransic/intransitivity.hpp"

namespace intransic {

struct SynthSpec {
  std::vector<int> cycle_sizes{3};
  std::uint64_t outcomes_per_pair = 100;
  double noise = 0.0;  // probability of flipping each outcome
  std::uint64_t seed = 0;

  void validate() const {
    if (cycle_sizes.empty()) throw Error("synth: at least one cycle size required");
    for (int s : cycle_sizes) {
      if (s < 3) throw Error("synth: cycle sizes must be at least 3");
    }
    if (outcomes_per_pair < 1) throw Error("synth: outcomes per pair must be positive");
    if (!(noise >= 0.0 && noise < 0.5)) throw Error("synth: noise must lie in [0, 0.5)");
  }
};

struct SynthResult {
  PlayerTablePtr players;
  std::vector<RawOutcome> outcomes;  // a is the planted winner unless flipped
  DominanceGraph planted;
  std::uint64_t planted_triangles = 0;
};

// Planted majority edges for `sizes`, in generation order.
inline std::vector<std::pair<PlayerId, PlayerId>> planted_edges(const std::vector<int>& sizes,
                                                                std::size_t* num_players) {
  std::vector<std::vector<PlayerId>> cliques;
  PlayerId next = 1;
  for (int s : sizes) {
    std::vector<PlayerId> members{0};
    for (int i = 1; i < s; ++i) members.push_back(next++);
    cliques.push_back(std::move(members));
  }
  std::vector<std::pair<PlayerId, PlayerId>> edges;
  for (const auto& c : cliques) {
    const std::size_t s = c.size();
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = i + 1; j < s; ++j) {
        if (i == 0 && j == s - 1) edges.emplace_back(c[j], c[i]);  // closes the cycle
        else edges.emplace_back(c[i], c[j]);
      }
    }
  }
  for (std::size_t i = 0; i < cliques.size(); ++i) {
    const PlayerId anchor = cliques[i].back();
    for (std::size_t j = i + 1; j < cliques.size(); ++j) {
      for (std::size_t m = 1; m < cliques[j].size(); ++m) {
        edges.emplace_back(anchor, cliques[j][m]);
      }
    }
  }
  if (num_players) *num_players = next;
  return edges;
}

inline SynthResult generate_synthetic(const SynthSpec& spec) {
  spec.validate();
  std::size_t n = 0;
  const auto edges = planted_edges(spec.cycle_sizes, &n);
  auto table = std::make_shared<PlayerTable>();
  for (std::size_t i = 0; i < n; ++i) table->intern("p" + std::to_string(i));

  SynthResult out;
  out.players = table;
  out.planted = DominanceGraph(n, edges);
  out.planted_triangles = intrans_at_3(out.planted).triangles;

  std::mt19937_64 rng(spec.seed);
  std::bernoulli_distribution flip(spec.noise);
  for (const auto& [winner, loser] : edges) {
    for (std::uint64_t i = 0; i < spec.outcomes_per_pair; ++i) {
      out.outcomes.push_back({winner, loser, !(spec.noise > 0.0 && flip(rng))});
    }
  }
  return out;
}

// Raw `winner,loser` lines.
inline void write_raw(const PlayerTable& players, const std::vector<RawOutcome>& outcomes,
                      std::ostream& out) {
  out << "winner,loser\n";
  for (const auto& o : outcomes) {
    const PlayerId w = o.a_won ? o.a : o.b;
    const PlayerId l = o.a_won ? o.b : o.a;
    out << players.label(w) << ',' << players.label(l) << '\n';
  }
}

}  // namespace intransic

#endif  // INTRANSIC_SYNTH_HPP_
