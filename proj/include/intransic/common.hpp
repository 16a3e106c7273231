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

#ifndef INTRANSIC_COMMON_HPP_
#define INTRANSIC_COMMON_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace intransic {

// Dense index into a PlayerTable.
using PlayerId = std::uint32_t;

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A malformed line in an input file. `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line,
             const std::string& message)
      : Error(source + ":" + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A rejected input record; `row` is the 0-based index in the input sequence.
class RecordError : public Error {
 public:
  RecordError(std::size_t row, const std::string& message)
      : Error("row " + std::to_string(row) + ": " + message), row_(row) {}

  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

// Parameters became non-finite during optimization.
class TrainingDiverged : public Error {
 public:
  using Error::Error;
};

// splitmix64 finalizer.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from a base seed and a list of tags.
template <typename... Tags>
std::uint64_t derive_seed(std::uint64_t seed, Tags... tags) {
  std::uint64_t h = mix_seed(seed);
  ((h = mix_seed(h ^ static_cast<std::uint64_t>(tags))), ...);
  return h;
}

// Seeded fair coin for an unordered pair. The answer does not depend on the
// order of `a` and `b`, so predictions for (a, b) and (b, a) agree.
inline PlayerId coin_flip_winner(std::uint64_t seed, PlayerId a, PlayerId b) {
  const PlayerId lo = std::min(a, b);
  const PlayerId hi = std::max(a, b);
  return (derive_seed(seed, lo, hi) & 1U) ? lo : hi;
}

}  // namespace intransic

#endif  // INTRANSIC_COMMON_HPP_
