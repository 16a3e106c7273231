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

// Majority-dominance graphs and cycle statistics.
//
// u -> v means u won the majority of the observed u-vs-v outcomes. Tied
// pairs contribute no edge. Intrans@3 is the number of directed 3-cycles
// divided by 2 * C(n, 3), the count of oriented triples in a complete
// tournament, regardless of how many pairs were actually observed.

#ifndef INTRANSIC_INTRANSITIVITY_HPP_
#define INTRANSIC_INTRANSITIVITY_HPP_

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "intransic/common.hpp"
#include "intransic/dataset.hpp"

namespace intransic {

class DominanceGraph {
 public:
  DominanceGraph() = default;

  // Rejects self-loops and 2-cycles; duplicate edges collapse.
  DominanceGraph(std::size_t n, const std::vector<std::pair<PlayerId, PlayerId>>& edges)
      : out_(n), in_(n) {
    for (const auto& [u, v] : edges) {
      if (u >= n || v >= n) throw Error("dominance edge out of range");
      if (u == v) throw Error("dominance self-loop");
      out_[u].push_back(v);
      in_[v].push_back(u);
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::sort(out_[i].begin(), out_[i].end());
      out_[i].erase(std::unique(out_[i].begin(), out_[i].end()), out_[i].end());
      std::sort(in_[i].begin(), in_[i].end());
      in_[i].erase(std::unique(in_[i].begin(), in_[i].end()), in_[i].end());
    }
    for (std::size_t u = 0; u < n; ++u) {
      for (PlayerId v : out_[u]) {
        if (has_edge(v, static_cast<PlayerId>(u))) {
          throw Error("dominance edges in both directions");
        }
      }
    }
  }

  std::size_t size() const { return out_.size(); }

  std::size_t num_edges() const {
    std::size_t e = 0;
    for (const auto& adj : out_) e += adj.size();
    return e;
  }

  const std::vector<PlayerId>& successors(PlayerId u) const { return out_[u]; }
  const std::vector<PlayerId>& predecessors(PlayerId u) const { return in_[u]; }

  bool has_edge(PlayerId u, PlayerId v) const {
    return std::binary_search(out_[u].begin(), out_[u].end(), v);
  }

  std::vector<std::pair<PlayerId, PlayerId>> edges() const {
    std::vector<std::pair<PlayerId, PlayerId>> out;
    for (std::size_t u = 0; u < out_.size(); ++u) {
      for (PlayerId v : out_[u]) out.emplace_back(static_cast<PlayerId>(u), v);
    }
    return out;
  }

  DominanceGraph reversed() const {
    std::vector<std::pair<PlayerId, PlayerId>> rev;
    for (const auto& [u, v] : edges()) rev.emplace_back(v, u);
    return DominanceGraph(size(), rev);
  }

 private:
  std::vector<std::vector<PlayerId>> out_;
  std::vector<std::vector<PlayerId>> in_;
};

inline DominanceGraph build_dominance_graph(const Dataset& d) {
  std::vector<std::pair<PlayerId, PlayerId>> edges;
  for (const auto& r : d.records()) {
    if (r.n_a > r.n_b) edges.emplace_back(r.a, r.b);
    else if (r.n_b > r.n_a) edges.emplace_back(r.b, r.a);
  }
  return DominanceGraph(d.num_players(), edges);
}

// True iff some directed cycle exists (Kahn's algorithm fails to drain).
inline bool has_cycle(const DominanceGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> indegree(n);
  std::vector<PlayerId> ready;
  for (std::size_t v = 0; v < n; ++v) {
    indegree[v] = g.predecessors(static_cast<PlayerId>(v)).size();
    if (indegree[v] == 0) ready.push_back(static_cast<PlayerId>(v));
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    const PlayerId u = ready.back();
    ready.pop_back();
    ++removed;
    for (PlayerId v : g.successors(u)) {
      if (--indegree[v] == 0) ready.push_back(v);
    }
  }
  return removed != n;
}

namespace detail {

// Calls fn(u, v, w) once per directed 3-cycle u -> v -> w -> u, u smallest.
template <typename Fn>
void for_each_triangle(const DominanceGraph& g, Fn&& fn) {
  for (PlayerId u = 0; u < g.size(); ++u) {
    for (PlayerId v : g.successors(u)) {
      if (v < u) continue;
      for (PlayerId w : g.successors(v)) {
        if (w > u && g.has_edge(w, u)) fn(u, v, w);
      }
    }
  }
}

}  // namespace detail

struct TriangleStats {
  std::uint64_t triangles = 0;
  double ratio = 0.0;
};

inline TriangleStats intrans_at_3(const DominanceGraph& g) {
  TriangleStats s;
  detail::for_each_triangle(g, [&](PlayerId, PlayerId, PlayerId) { ++s.triangles; });
  const double n = static_cast<double>(g.size());
  if (g.size() >= 3) {
    const double oriented_triples = n * (n - 1.0) * (n - 2.0) / 3.0;  // 2 * C(n, 3)
    s.ratio = static_cast<double>(s.triangles) / oriented_triples;
  }
  return s;
}

// Sorted ids of players that sit on at least one directed 3-cycle.
inline std::vector<PlayerId> players_in_triangles(const DominanceGraph& g) {
  std::vector<bool> member(g.size(), false);
  detail::for_each_triangle(g, [&](PlayerId u, PlayerId v, PlayerId w) {
    member[u] = member[v] = member[w] = true;
  });
  std::vector<PlayerId> out;
  for (PlayerId p = 0; p < member.size(); ++p) {
    if (member[p]) out.push_back(p);
  }
  return out;
}

inline constexpr std::size_t kUnlimitedCycles = std::numeric_limits<std::size_t>::max();
inline constexpr std::size_t kDefaultCycleCap = 10000;

struct CycleEnumeration {
  // Each cycle starts at its smallest vertex; the closing edge is implied.
  std::vector<std::vector<PlayerId>> cycles;
  bool truncated = false;
};

namespace detail {

// Johnson's elementary-circuit algorithm with an output cap.
class JohnsonEnumerator {
 public:
  JohnsonEnumerator(const DominanceGraph& g, std::size_t cap)
      : g_(g), cap_(cap), blocked_(g.size()), block_map_(g.size()),
        in_component_(g.size()) {}

  CycleEnumeration run() {
    const std::size_t n = g_.size();
    PlayerId start = 0;
    while (start < n && !stop_) {
      const auto component = least_component(start);
      if (component.empty()) break;
      start = component.front();
      std::fill(in_component_.begin(), in_component_.end(), false);
      for (PlayerId v : component) {
        in_component_[v] = true;
        blocked_[v] = false;
        block_map_[v].clear();
      }
      root_ = start;
      circuit(start);
      ++start;
    }
    return std::move(result_);
  }

 private:
  // Sorted members of the non-trivial strongly connected component, within
  // the subgraph induced by vertices >= `from`, that holds the least vertex.
  std::vector<PlayerId> least_component(PlayerId from) const {
    const std::size_t n = g_.size();
    constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<PlayerId> stack;
    std::vector<PlayerId> best;
    std::size_t counter = 0;

    // Iterative Tarjan.
    struct Frame {
      PlayerId v;
      std::size_t next;
    };
    for (PlayerId root = from; root < n; ++root) {
      if (index[root] != kUnvisited) continue;
      std::vector<Frame> frames{{root, 0}};
      index[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = true;
      while (!frames.empty()) {
        Frame& f = frames.back();
        const auto& succ = g_.successors(f.v);
        if (f.next < succ.size()) {
          const PlayerId w = succ[f.next++];
          if (w < from) continue;
          if (index[w] == kUnvisited) {
            index[w] = low[w] = counter++;
            stack.push_back(w);
            on_stack[w] = true;
            frames.push_back({w, 0});
          } else if (on_stack[w]) {
            low[f.v] = std::min(low[f.v], index[w]);
          }
          continue;
        }
        const PlayerId v = f.v;
        frames.pop_back();
        if (!frames.empty()) {
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        }
        if (low[v] == index[v]) {
          std::vector<PlayerId> component;
          PlayerId w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            component.push_back(w);
          } while (w != v);
          if (component.size() >= 2) {
            std::sort(component.begin(), component.end());
            if (best.empty() || component.front() < best.front()) {
              best = std::move(component);
            }
          }
        }
      }
    }
    return best;
  }

  void unblock(PlayerId u) {
    blocked_[u] = false;
    auto pending = std::move(block_map_[u]);
    block_map_[u].clear();
    for (PlayerId w : pending) {
      if (blocked_[w]) unblock(w);
    }
  }

  bool circuit(PlayerId v) {
    bool found = false;
    path_.push_back(v);
    blocked_[v] = true;
    for (PlayerId w : g_.successors(v)) {
      if (stop_) break;
      if (w < root_ || !in_component_[w]) continue;
      if (w == root_) {
        if (result_.cycles.size() >= cap_) {
          result_.truncated = true;
          stop_ = true;
          break;
        }
        result_.cycles.push_back(path_);
        found = true;
      } else if (!blocked_[w] && circuit(w)) {
        found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (PlayerId w : g_.successors(v)) {
        if (w < root_ || !in_component_[w]) continue;
        auto& blockers = block_map_[w];
        if (std::find(blockers.begin(), blockers.end(), v) == blockers.end()) {
          blockers.push_back(v);
        }
      }
    }
    path_.pop_back();
    return found;
  }

  const DominanceGraph& g_;
  std::size_t cap_;
  std::vector<bool> blocked_;
  std::vector<std::vector<PlayerId>> block_map_;
  std::vector<bool> in_component_;
  std::vector<PlayerId> path_;
  PlayerId root_ = 0;
  bool stop_ = false;
  CycleEnumeration result_;
};

}  // namespace detail

// Up to `cap` elementary cycles. `truncated` is set only when a further
// cycle existed beyond the cap.
inline CycleEnumeration enumerate_cycles(const DominanceGraph& g,
                                         std::size_t cap = kDefaultCycleCap) {
  return detail::JohnsonEnumerator(g, cap).run();
}

struct IntransReport {
  std::size_t num_players = 0;
  std::uint64_t num_outcomes = 0;
  bool is_intrans = false;
  std::uint64_t triangles = 0;
  double intrans_at_3 = 0.0;
  std::vector<PlayerId> players_in_triangles;
  CycleEnumeration cycles;
};

inline IntransReport stats(const Dataset& d, std::size_t cap = kDefaultCycleCap) {
  const DominanceGraph g = build_dominance_graph(d);
  IntransReport r;
  r.num_players = d.num_players();
  r.num_outcomes = d.total_outcomes();
  r.is_intrans = has_cycle(g);
  const TriangleStats t = intrans_at_3(g);
  r.triangles = t.triangles;
  r.intrans_at_3 = t.ratio;
  r.players_in_triangles = players_in_triangles(g);
  r.cycles = enumerate_cycles(g, cap);
  return r;
}

inline nlohmann::ordered_json to_json(const IntransReport& r, const PlayerTable& players) {
  auto labels = [&](const std::vector<PlayerId>& ids) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (PlayerId p : ids) out.push_back(players.label(p));
    return out;
  };
  nlohmann::ordered_json cycles = nlohmann::ordered_json::array();
  for (const auto& c : r.cycles.cycles) cycles.push_back(labels(c));
  nlohmann::ordered_json j;
  j["players"] = r.num_players;
  j["records"] = r.num_outcomes;
  j["is_intrans"] = r.is_intrans;
  j["triangles"] = r.triangles;
  j["intrans_at_3"] = r.intrans_at_3;
  j["player_intrans_at_3"] = r.players_in_triangles.size();
  j["players_in_triangles"] = labels(r.players_in_triangles);
  j["cycles_found"] = r.cycles.cycles.size();
  j["cycles_truncated"] = r.cycles.truncated;
  j["cycles"] = std::move(cycles);
  return j;
}

inline std::string format_percent(double ratio) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << ratio * 100.0 << '%';
  return out.str();
}

// One row per dataset under the columns DATASET, No. of Players, No. of
// Records, isIntrans, Intrans@3, No. PlayerIntrans@3.
inline std::string format_stats_table(
    const std::vector<std::pair<std::string, IntransReport>>& rows) {
  std::vector<std::vector<std::string>> cells = {
      {"DATASET", "No. of Players", "No. of Records", "isIntrans", "Intrans@3",
       "No. PlayerIntrans@3"}};
  for (const auto& [name, r] : rows) {
    cells.push_back({name, std::to_string(r.num_players), std::to_string(r.num_outcomes),
                     r.is_intrans ? "true" : "false", format_percent(r.intrans_at_3),
                     std::to_string(r.players_in_triangles.size()) + "/" +
                         std::to_string(r.num_players)});
  }
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c + 1 < row.size()) out << std::left << std::setw(static_cast<int>(width[c]));
      out << row[c];
      out << (c + 1 < row.size() ? "  " : "\n");
    }
  }
  return out.str();
}

}  // namespace intransic

#endif  // INTRANSIC_INTRANSITIVITY_HPP_
