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

#ifndef INTRANSIC_METRICS_HPP_
#define INTRANSIC_METRICS_HPP_

#include <cstdint>

#include "intransic/common.hpp"
#include "intransic/dataset.hpp"
#include "intransic/models.hpp"

namespace intransic {

// Share of test outcomes that land on the predicted side of their pair:
//   sum(n_a * [a predicted] + n_b * [b predicted]) / sum(n_a + n_b).
// `predict(a, b)` returns the predicted winner of a record.
template <typename Predictor>
double accuracy(const Dataset& test, Predictor&& predict) {
  const std::uint64_t total = test.total_outcomes();
  if (total == 0) throw Error("accuracy: empty test set");
  std::uint64_t credited = 0;
  for (const auto& r : test.records()) {
    const PlayerId winner = predict(r.a, r.b);
    credited += winner == r.a ? r.n_a : r.n_b;
  }
  return static_cast<double>(credited) / static_cast<double>(total);
}

// Accuracy of a fitted model. Pairs involving a player the model never saw
// during fitting get a seeded coin flip instead of a model prediction.
inline double test_accuracy(const MatchupModel& m, const Dataset& test,
                            std::uint64_t seed) {
  return accuracy(test, [&](PlayerId a, PlayerId b) {
    if (!m.is_observed(a) || !m.is_observed(b)) return coin_flip_winner(seed, a, b);
    return predict_winner(m, a, b, seed);
  });
}

}  // namespace intransic

#endif  // INTRANSIC_METRICS_HPP_
