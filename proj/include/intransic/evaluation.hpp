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

// k-fold cross-validation with grid search over (dim, lambda).
//
// Outcomes are split into k folds. For each test fold the remaining
// outcomes are split again into train and validation parts
// (TrainConfig::eval_fraction, by outcome). Every grid point is trained on
// the train part, the best validation accuracy picks the model, and that
// model is scored on the test fold. Folds run concurrently; the result only
// depends on the seed.

#ifndef INTRANSIC_EVALUATION_HPP_
#define INTRANSIC_EVALUATION_HPP_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <future>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "intransic/common.hpp"
#include "intransic/dataset.hpp"
#include "intransic/dataset_io.hpp"
#include "intransic/intransitivity.hpp"
#include "intransic/metrics.hpp"
#include "intransic/models.hpp"
#include "intransic/training.hpp"

namespace intransic {

struct GridPoint {
  int dim = 2;
  double lambda = 0.0;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

inline std::vector<GridPoint> make_grid(std::span<const int> dims,
                                        std::span<const double> lambdas) {
  std::vector<GridPoint> grid;
  for (int d : dims) {
    for (double l : lambdas) grid.push_back({d, l});
  }
  return grid;
}

inline std::vector<GridPoint> default_grid() {
  static constexpr int kDims[] = {2, 5, 10, 50};
  static constexpr double kLambdas[] = {0.0, 1e-4, 1e-3, 1e-2};
  return make_grid(kDims, kLambdas);
}

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single value
};

inline MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.stddev = std::sqrt(ss / (n - 1.0));
  }
  return out;
}

struct FoldResult {
  double accuracy = 0.0;
  double val_accuracy = 0.0;
  GridPoint chosen;
};

struct ExperimentReport {
  std::string dataset;
  ModelKind kind = ModelKind::kNaive;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<FoldResult> folds;
  double mean = 0.0;
  double stddev = 0.0;
  IntransReport intrans;

  std::vector<double> fold_accuracies() const {
    std::vector<double> out;
    for (const auto& f : folds) out.push_back(f.accuracy);
    return out;
  }
};

// Trains one model; the naive predictor is fitted on train and validation
// together since it has nothing to tune.
inline MatchupModel fit_model(ModelKind kind, const Dataset& train, const Dataset& validation,
                              const TrainConfig& cfg) {
  if (kind == ModelKind::kNaive) {
    std::vector<Matchup> rows = train.records();
    rows.insert(rows.end(), validation.records().begin(), validation.records().end());
    return fit_naive(aggregate(rows, train.player_table()));
  }
  return sgd_train(kind, train, validation, cfg).model;
}

// Grid points that actually differ for `kind`: BT has no dimension and the
// naive model has no hyperparameters at all.
inline std::vector<GridPoint> effective_grid(ModelKind kind, std::span<const GridPoint> grid) {
  if (kind == ModelKind::kNaive) return {GridPoint{0, 0.0}};
  std::vector<GridPoint> out;
  for (GridPoint g : grid) {
    if (kind == ModelKind::kBradleyTerry) g.dim = 1;
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  }
  return out;
}

namespace detail {

inline FoldResult run_fold(ModelKind kind, const Fold& fold, std::span<const GridPoint> grid,
                           const TrainConfig& cfg, std::uint64_t seed, std::size_t index) {
  const Holdout inner =
      split_holdout(fold.train, cfg.eval_fraction, derive_seed(seed, 12, index));
  const Dataset& validation = inner.holdout.empty() ? inner.train : inner.holdout;
  const std::uint64_t tie_seed = derive_seed(seed, 14, index);

  std::optional<MatchupModel> best;
  FoldResult result;
  result.val_accuracy = -1.0;
  std::optional<TrainingDiverged> last_failure;
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    TrainConfig c = cfg;
    c.dim = grid[gi].dim;
    c.set_lambda(grid[gi].lambda);
    c.seed = derive_seed(seed, 13, index, gi);
    try {
      MatchupModel model = fit_model(kind, inner.train, inner.holdout, c);
      const double val = test_accuracy(model, validation, tie_seed);
      if (val > result.val_accuracy) {
        result.val_accuracy = val;
        result.chosen = grid[gi];
        best = std::move(model);
      }
    } catch (const TrainingDiverged& e) {
      last_failure = e;
    }
  }
  if (!best) throw *last_failure;
  result.accuracy = test_accuracy(*best, fold.test, tie_seed);
  return result;
}

}  // namespace detail

inline ExperimentReport cross_validate(ModelKind kind, const Dataset& d, std::size_t k,
                                       std::span<const GridPoint> grid, const TrainConfig& cfg,
                                       std::uint64_t seed, std::string name = "dataset",
                                       std::size_t cycle_cap = kDefaultCycleCap) {
  if (k < 3) throw Error("cross_validate: k must be at least 3");
  if (grid.empty()) throw Error("cross_validate: empty hyperparameter grid");
  cfg.validate();
  const std::vector<Fold> folds = split_folds(d, k, derive_seed(seed, 11));
  const std::vector<GridPoint> points = effective_grid(kind, grid);

  std::vector<std::future<FoldResult>> pending;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    pending.push_back(std::async(std::launch::async, [&, f] {
      return detail::run_fold(kind, folds[f], points, cfg, seed, f);
    }));
  }
  ExperimentReport report;
  report.dataset = std::move(name);
  report.kind = kind;
  report.k = k;
  report.seed = seed;
  for (auto& p : pending) report.folds.push_back(p.get());
  const auto accs = report.fold_accuracies();
  const MeanStd ms = mean_std(accs);
  report.mean = ms.mean;
  report.stddev = ms.stddev;
  report.intrans = stats(d, cycle_cap);
  return report;
}

inline std::string dataset_name(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

// Cross-validates every requested model on the same folds.
inline std::vector<ExperimentReport> run_benchmark(const std::string& dataset_path,
                                                   std::span<const ModelKind> models,
                                                   std::size_t k,
                                                   std::span<const GridPoint> grid,
                                                   const TrainConfig& cfg, std::uint64_t seed,
                                                   std::size_t cycle_cap = kDefaultCycleCap) {
  std::vector<ExperimentReport> reports;
  if (models.empty()) return reports;
  const Dataset d = read_dataset(dataset_path);
  for (ModelKind kind : models) {
    reports.push_back(
        cross_validate(kind, d, k, grid, cfg, seed, dataset_name(dataset_path), cycle_cap));
  }
  return reports;
}

inline nlohmann::ordered_json to_json(const ExperimentReport& r, const PlayerTable& players) {
  nlohmann::ordered_json folds = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.folds.size(); ++i) {
    const auto& f = r.folds[i];
    folds.push_back({{"fold", i},
                     {"accuracy", f.accuracy},
                     {"val_accuracy", f.val_accuracy},
                     {"dim", f.chosen.dim},
                     {"lambda", f.chosen.lambda}});
  }
  nlohmann::ordered_json intrans = to_json(r.intrans, players);
  intrans.erase("cycles");
  nlohmann::ordered_json j;
  j["dataset"] = r.dataset;
  j["model"] = std::string(to_string(r.kind));
  j["k"] = r.k;
  j["seed"] = r.seed;
  j["folds"] = std::move(folds);
  j["mean"] = r.mean;
  j["std"] = r.stddev;
  j["intransitivity"] = std::move(intrans);
  return j;
}

inline std::string model_column_title(ModelKind kind) {
  switch (kind) {
    case ModelKind::kNaive: return "Naive";
    case ModelKind::kBradleyTerry: return "Bradley-Terry";
    case ModelKind::kBladeChestInner: return "Blade-Chest";
    case ModelKind::kBladeChestDistance: return "Blade-Chest (dist)";
    case ModelKind::kGeneral: return "Proposed Model";
  }
  return "?";
}

inline std::string format_mean_std(double mean, double stddev) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << mean << " +/- " << stddev;
  return out.str();
}

// Aligned text table: one row per dataset, one "mean +/- std" column per
// model in first-seen order.
inline std::string format_benchmark_table(std::span<const ExperimentReport> reports) {
  std::vector<ModelKind> kinds;
  std::vector<std::string> datasets;
  std::map<std::pair<std::string, ModelKind>, const ExperimentReport*> cell;
  for (const auto& r : reports) {
    if (std::find(kinds.begin(), kinds.end(), r.kind) == kinds.end()) kinds.push_back(r.kind);
    if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end()) {
      datasets.push_back(r.dataset);
    }
    cell[{r.dataset, r.kind}] = &r;
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"DATASET"});
  for (ModelKind k : kinds) rows.front().push_back(model_column_title(k));
  for (const auto& name : datasets) {
    std::vector<std::string> row{name};
    for (ModelKind k : kinds) {
      auto it = cell.find({name, k});
      row.push_back(it == cell.end() ? "-" : format_mean_std(it->second->mean,
                                                             it->second->stddev));
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c + 1 < row.size()) out << std::left << std::setw(static_cast<int>(width[c]));
      out << row[c];
      out << (c + 1 < row.size() ? " | " : "\n");
    }
  }
  return out.str();
}

}  // namespace intransic

#endif  // INTRANSIC_EVALUATION_HPP_
