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

// CSV readers and writers for datasets and player tables.
//
// Accepted dataset layouts, detected from the column count of the first
// data line (an optional header line is skipped):
//
//   winner,loser        raw, one outcome per line
//   a,b,a_won           raw, a_won in {0,1}
//   a,b,n_a,n_b         collapsed, one line per pair
//
// Player columns hold labels. Without a player table, labels are assigned
// ids in order of first appearance.

#ifndef INTRANSIC_DATASET_IO_HPP_
#define INTRANSIC_DATASET_IO_HPP_

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "intransic/common.hpp"
#include "intransic/dataset.hpp"

namespace intransic {

// Failure to open or write a file, as opposed to bad content.
class IoError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

inline bool is_header(const std::vector<std::string_view>& fields) {
  static const std::vector<std::vector<std::string_view>> kHeaders = {
      {"winner", "loser"},
      {"a", "b", "a_won"},
      {"a", "b", "n_a", "n_b"},
      {"id", "label"},
  };
  for (const auto& h : kHeaders) {
    if (std::equal(fields.begin(), fields.end(), h.begin(), h.end())) return true;
  }
  return false;
}

// Parses a non-negative count; `what` names the column in error messages.
inline std::uint64_t parse_count(std::string_view field, const std::string& source,
                                 std::size_t line, const char* what) {
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(source, line,
                     std::string("invalid ") + what + " '" + std::string(field) + "'");
  }
  if (value < 0) {
    throw ParseError(source, line, std::string("negative ") + what);
  }
  return static_cast<std::uint64_t>(value);
}

// Iterates non-blank, non-comment lines, skipping a header on the first one.
template <typename Fn>
void for_each_row(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto fields = split_csv(body);
    if (first) {
      first = false;
      if (is_header(fields)) continue;
    }
    fn(fields, line_no);
  }
}

}  // namespace detail

// Reads a player table in `id,label` form; ids must be 0..M-1 in order.
inline PlayerTable parse_players(std::istream& in, const std::string& source) {
  PlayerTable table;
  detail::for_each_row(in, [&](const auto& fields, std::size_t line) {
    if (fields.size() != 2) {
      throw ParseError(source, line, "expected 'id,label'");
    }
    const auto id = detail::parse_count(fields[0], source, line, "player id");
    if (id != table.size()) {
      throw ParseError(source, line, "player ids must be dense and in order");
    }
    if (fields[1].empty() || table.find(fields[1])) {
      throw ParseError(source, line, "empty or duplicate label");
    }
    table.intern(fields[1]);
  });
  return table;
}

inline PlayerTable read_players(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open player table '" + path + "'");
  return parse_players(in, path);
}

inline void write_players(const PlayerTable& table, std::ostream& out) {
  out << "id,label\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << i << ',' << table.label(static_cast<PlayerId>(i)) << '\n';
  }
}

inline void write_players(const PlayerTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write player table '" + path + "'");
  write_players(table, out);
}

// Parses either dataset layout. With `players` given, every label must
// already exist in it; otherwise a fresh table is built.
inline Dataset parse_dataset(std::istream& in, const std::string& source,
                             PlayerTablePtr players = nullptr) {
  auto table = players ? std::make_shared<PlayerTable>(*players)
                       : std::make_shared<PlayerTable>();
  const bool fixed_table = static_cast<bool>(players);
  std::size_t columns = 0;
  std::vector<Matchup> rows;

  auto resolve = [&](std::string_view label, std::size_t line) -> PlayerId {
    if (label.empty()) throw ParseError(source, line, "empty player label");
    if (fixed_table) {
      auto id = table->find(label);
      if (!id) {
        throw ParseError(source, line,
                         "player '" + std::string(label) + "' not in player table");
      }
      return *id;
    }
    return table->intern(label);
  };

  detail::for_each_row(in, [&](const auto& fields, std::size_t line) {
    if (columns == 0) {
      columns = fields.size();
      if (columns < 2 || columns > 4) {
        throw ParseError(source, line, "expected 2, 3 or 4 columns");
      }
    }
    if (fields.size() != columns) {
      throw ParseError(source, line,
                       "expected " + std::to_string(columns) + " columns, got " +
                           std::to_string(fields.size()));
    }
    const PlayerId a = resolve(fields[0], line);
    const PlayerId b = resolve(fields[1], line);
    if (a == b) throw ParseError(source, line, "self-match");
    Matchup m{a, b, 1, 0};
    if (columns == 3) {
      const auto won = detail::parse_count(fields[2], source, line, "a_won");
      if (won > 1) throw ParseError(source, line, "a_won must be 0 or 1");
      m.n_a = won;
      m.n_b = 1 - won;
    } else if (columns == 4) {
      m.n_a = detail::parse_count(fields[2], source, line, "n_a");
      m.n_b = detail::parse_count(fields[3], source, line, "n_b");
      if (m.total() == 0) throw ParseError(source, line, "pair without outcomes");
    }
    rows.push_back(m);
  });
  return aggregate(rows, std::move(table));
}

inline Dataset read_dataset(const std::string& path, PlayerTablePtr players = nullptr) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset '" + path + "'");
  return parse_dataset(in, path, std::move(players));
}

// Writes the collapsed layout with a header line.
inline void write_dataset(const Dataset& d, std::ostream& out) {
  out << "a,b,n_a,n_b\n";
  for (const auto& r : d.records()) {
    out << d.players().label(r.a) << ',' << d.players().label(r.b) << ',' << r.n_a
        << ',' << r.n_b << '\n';
  }
}

inline void write_dataset(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write dataset '" + path + "'");
  write_dataset(d, out);
}

}  // namespace intransic

#endif  // INTRANSIC_DATASET_IO_HPP_
