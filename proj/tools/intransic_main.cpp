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

// intransic: command-line front end.
//
//   intransic stats    DATASET [--cap N] [--format table|json]
//   intransic train    DATASET --model KIND --out CKPT [training flags]
//   intransic evaluate CKPT DATASET [--seed S]
//   intransic cv       DATASET --model KIND [--k K] [--dims ..] [--lambdas ..]
//   intransic bench    DATASET [--models naive,bt,bci,general] [...]
//   intransic synth    --cycles 3,3 --per-pair N --noise P --out FILE
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or I/O error.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "intransic/intransic.hpp"

namespace {

using namespace intransic;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct TrainFlags {
  std::string model = "general";
  int dim = 2;
  std::optional<double> lambda;
  std::optional<double> lambda1;
  std::optional<double> lambda2;
  std::optional<double> lambda3;
  double lr = TrainConfig{}.learning_rate;
  int epochs = TrainConfig{}.epochs;
  int patience = TrainConfig{}.patience;
  double eval_fraction = TrainConfig{}.eval_fraction;
  double init_scale = TrainConfig{}.init_scale;
  std::size_t min_epoch_updates = TrainConfig{}.min_epoch_updates;

  void add_to(CLI::App* cmd, bool with_model_and_dim) {
    if (with_model_and_dim) {
      cmd->add_option("--model", model, "naive, bt, bci, bcd or general")
          ->capture_default_str();
      cmd->add_option("--dim", dim, "embedding dimension (general needs > 1)")
          ->capture_default_str();
      cmd->add_option("--lambda", lambda, "shared regularization weight (default 0)");
    }
    cmd->add_option("--lambda1", lambda1, "embedding-norm weight override");
    cmd->add_option("--lambda2", lambda2, "interaction-matrix weight override");
    cmd->add_option("--lambda3", lambda3, "intrinsic-matrix weight override");
    cmd->add_option("--lr", lr, "learning rate")->capture_default_str();
    cmd->add_option("--epochs", epochs, "maximum epochs")->capture_default_str();
    cmd->add_option("--patience", patience, "early-stop patience (0 disables)")
        ->capture_default_str();
    cmd->add_option("--eval-fraction", eval_fraction, "validation share of outcomes")
        ->capture_default_str();
    cmd->add_option("--init-scale", init_scale, "uniform init half-width")
        ->capture_default_str();
    cmd->add_option("--min-epoch-updates", min_epoch_updates, "lower bound on updates per epoch")
        ->capture_default_str();
  }

  TrainConfig config(std::uint64_t seed) const {
    TrainConfig cfg;
    cfg.dim = dim;
    cfg.set_lambda(lambda.value_or(0.0));
    if (lambda1) cfg.lambda1 = *lambda1;
    if (lambda2) cfg.lambda2 = *lambda2;
    if (lambda3) cfg.lambda3 = *lambda3;
    cfg.learning_rate = lr;
    cfg.epochs = epochs;
    cfg.patience = patience;
    cfg.eval_fraction = eval_fraction;
    cfg.init_scale = init_scale;
    cfg.min_epoch_updates = min_epoch_updates;
    cfg.seed = seed;
    try {
      cfg.validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

ModelKind parse_kind(const std::string& name) {
  try {
    return parse_model_kind(name);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void check_format(const std::string& format) {
  if (format != "table" && format != "json") {
    throw UsageError("--format must be 'table' or 'json'");
  }
}

Dataset load(const std::string& path, const std::string& players_path) {
  if (players_path.empty()) return read_dataset(path);
  return read_dataset(path, std::make_shared<const PlayerTable>(read_players(players_path)));
}

std::vector<GridPoint> grid_from(const std::vector<int>& dims,
                                 const std::vector<double>& lambdas) {
  if (dims.empty() && lambdas.empty()) return default_grid();
  const std::vector<int> d = dims.empty() ? std::vector<int>{2} : dims;
  const std::vector<double> l = lambdas.empty() ? std::vector<double>{0.0} : lambdas;
  return make_grid(d, l);
}

void validate_grid(ModelKind kind, const std::vector<GridPoint>& grid) {
  for (const auto& g : grid) {
    if (kind == ModelKind::kGeneral && g.dim < 2) {
      throw UsageError("general model requires --dims values > 1");
    }
    if (g.dim < 1) throw UsageError("--dims values must be positive");
    if (g.lambda < 0.0) throw UsageError("--lambdas values must be non-negative");
  }
}

int cmd_stats(const std::string& path, const std::string& players_path, std::size_t cap,
              const std::string& format) {
  check_format(format);
  const Dataset d = load(path, players_path);
  const IntransReport report = stats(d, cap);
  if (format == "json") {
    nlohmann::ordered_json j{{"dataset", dataset_name(path)}};
    j.update(to_json(report, d.players()));
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << format_stats_table({{dataset_name(path), report}});
    std::cout << "triangles: " << report.triangles << ", cycles found: "
              << report.cycles.cycles.size() << (report.cycles.truncated ? " (truncated)" : "")
              << '\n';
  }
  return kExitOk;
}

int cmd_train(const std::string& path, const std::string& players_path,
              const TrainFlags& flags, std::uint64_t seed, const std::string& out_path,
              const std::string& trace_path) {
  const ModelKind kind = parse_kind(flags.model);
  if (kind == ModelKind::kGeneral && flags.dim < 2) {
    throw UsageError("general model requires --dim > 1");
  }
  if (flags.dim < 1) throw UsageError("--dim must be positive");
  const TrainConfig cfg = flags.config(seed);
  const Dataset d = load(path, players_path);
  if (d.empty()) throw Error("dataset '" + path + "' has no records");

  MatchupModel model;
  TrainTrace trace;
  if (kind == ModelKind::kNaive) {
    model = fit_naive(d);
  } else {
    TrainResult result = sgd_train(kind, d, cfg);
    model = std::move(result.model);
    trace = std::move(result.trace);
  }
  save_model(model, out_path);
  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    if (!out) throw IoError("cannot write trace '" + trace_path + "'");
    trace.write_csv(out);
  }
  std::cout << std::setprecision(6) << std::fixed;
  std::cout << "model: " << to_string(kind) << '\n';
  if (kind != ModelKind::kNaive) {
    std::cout << "epochs: " << trace.epochs.size() << " (best " << trace.best_epoch << ", "
              << to_string(trace.stop) << ")\n";
  }
  std::cout << "objective: " << objective(model, d, cfg) << '\n';
  std::cout << "train accuracy: " << test_accuracy(model, d, derive_seed(seed, 3)) << '\n';
  std::cout << "checkpoint: " << out_path << '\n';
  return kExitOk;
}

int cmd_evaluate(const std::string& checkpoint, const std::string& path, std::uint64_t seed) {
  const MatchupModel model = load_model(checkpoint);
  const Dataset raw = read_dataset(path);
  Dataset d;
  try {
    d = remap(raw, model.players);
  } catch (const Error& e) {
    throw Error(std::string("checkpoint/dataset player mismatch: ") + e.what());
  }
  std::cout << std::setprecision(6) << std::fixed;
  std::cout << "accuracy: " << test_accuracy(model, d, derive_seed(seed, 3)) << '\n';
  std::cout << "log-likelihood: " << log_likelihood(model, d) << '\n';
  return kExitOk;
}

int cmd_cv(const std::string& path, const std::string& players_path, const TrainFlags& flags,
           std::size_t k, const std::vector<int>& dims, const std::vector<double>& lambdas,
           std::uint64_t seed, std::size_t cap, const std::string& format) {
  check_format(format);
  const ModelKind kind = parse_kind(flags.model);
  const auto grid = grid_from(dims, lambdas);
  validate_grid(kind, grid);
  if (k < 3) throw UsageError("--k must be at least 3");
  const TrainConfig cfg = flags.config(seed);
  const Dataset d = load(path, players_path);
  const ExperimentReport report =
      cross_validate(kind, d, k, grid, cfg, seed, dataset_name(path), cap);
  if (format == "json") {
    std::cout << to_json(report, d.players()).dump(2) << '\n';
  } else {
    std::cout << std::setprecision(4) << std::fixed;
    for (std::size_t i = 0; i < report.folds.size(); ++i) {
      const auto& f = report.folds[i];
      std::cout << "fold " << i << ": accuracy " << f.accuracy << " (validation "
                << f.val_accuracy << ", dim " << f.chosen.dim << ", lambda "
                << std::defaultfloat << f.chosen.lambda << std::fixed << ")\n";
    }
    std::cout << format_benchmark_table(std::span(&report, 1));
  }
  return kExitOk;
}

int cmd_bench(const std::string& path, const std::vector<std::string>& model_names,
              const TrainFlags& flags, std::size_t k, const std::vector<int>& dims,
              const std::vector<double>& lambdas, std::uint64_t seed, std::size_t cap,
              const std::string& format) {
  check_format(format);
  std::vector<ModelKind> kinds;
  for (const auto& name : model_names) kinds.push_back(parse_kind(name));
  const auto grid = grid_from(dims, lambdas);
  for (ModelKind kind : kinds) validate_grid(kind, grid);
  if (k < 3) throw UsageError("--k must be at least 3");
  const TrainConfig cfg = flags.config(seed);
  const auto reports = run_benchmark(path, kinds, k, grid, cfg, seed, cap);
  if (format == "json") {
    nlohmann::ordered_json all = nlohmann::ordered_json::array();
    if (!reports.empty()) {
      const Dataset d = read_dataset(path);
      for (const auto& r : reports) all.push_back(to_json(r, d.players()));
    }
    std::cout << all.dump(2) << '\n';
  } else {
    std::cout << format_benchmark_table(reports);
  }
  return kExitOk;
}

int cmd_synth(const SynthSpec& spec, const std::string& out_path) {
  try {
    spec.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const SynthResult result = generate_synthetic(spec);
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot write '" + out_path + "'");
  write_raw(*result.players, result.outcomes, out);
  std::cout << "players: " << result.players->size() << '\n';
  std::cout << "outcomes: " << result.outcomes.size() << '\n';
  std::cout << "planted triangles: " << result.planted_triangles << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pairwise matchup models with intransitivity"};
  app.require_subcommand(1);

  std::string dataset;
  std::string players_path;
  std::string format = "table";
  std::uint64_t seed = 0;
  std::size_t cap = kDefaultCycleCap;
  std::size_t k = 3;
  std::vector<int> dims;
  std::vector<double> lambdas;
  TrainFlags flags;

  auto* stats_cmd = app.add_subcommand("stats", "intransitivity statistics of a dataset");
  stats_cmd->add_option("dataset", dataset, "dataset CSV")->required();
  stats_cmd->add_option("--players", players_path, "player table CSV (id,label)");
  stats_cmd->add_option("--cap", cap, "maximum cycles to enumerate")->capture_default_str();
  stats_cmd->add_option("--format", format, "table or json")->capture_default_str();
  stats_cmd->add_option("--seed", seed, "unused; accepted for uniformity");

  std::string out_path;
  std::string trace_path;
  auto* train_cmd = app.add_subcommand("train", "fit a model and write a checkpoint");
  train_cmd->add_option("dataset", dataset, "dataset CSV")->required();
  train_cmd->add_option("--players", players_path, "player table CSV (id,label)");
  train_cmd->add_option("--out", out_path, "checkpoint path")->required();
  train_cmd->add_option("--trace", trace_path, "write epoch,objective,val_accuracy CSV");
  train_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
  flags.add_to(train_cmd, true);

  std::string checkpoint;
  auto* eval_cmd = app.add_subcommand("evaluate", "test accuracy of a checkpoint");
  eval_cmd->add_option("checkpoint", checkpoint, "checkpoint JSON")->required();
  eval_cmd->add_option("dataset", dataset, "dataset CSV")->required();
  eval_cmd->add_option("--seed", seed, "tie-break seed")->capture_default_str();

  auto add_cv_options = [&](CLI::App* cmd) {
    cmd->add_option("dataset", dataset, "dataset CSV")->required();
    cmd->add_option("--k", k, "number of folds")->capture_default_str();
    cmd->add_option("--dims", dims, "grid dimensions (default 2,5,10,50)")->delimiter(',');
    cmd->add_option("--lambdas", lambdas, "grid lambdas (default 0,1e-4,1e-3,1e-2)")
        ->delimiter(',');
    cmd->add_option("--seed", seed, "random seed")->capture_default_str();
    cmd->add_option("--cap", cap, "maximum cycles to enumerate")->capture_default_str();
    cmd->add_option("--format", format, "table or json")->capture_default_str();
  };
  auto* cv_cmd = app.add_subcommand("cv", "k-fold cross-validation with grid search");
  add_cv_options(cv_cmd);
  cv_cmd->add_option("--players", players_path, "player table CSV (id,label)");
  cv_cmd->add_option("--model", flags.model, "naive, bt, bci, bcd or general")
      ->capture_default_str();
  flags.add_to(cv_cmd, false);

  std::vector<std::string> models{"naive", "bt", "bci", "general"};
  auto* bench_cmd = app.add_subcommand("bench", "cross-validate several models");
  add_cv_options(bench_cmd);
  bench_cmd->add_option("--models", models, "model kinds")->delimiter(',')
      ->capture_default_str();
  flags.add_to(bench_cmd, false);

  SynthSpec spec;
  std::string synth_out;
  auto* synth_cmd = app.add_subcommand("synth", "generate a planted-cycle dataset");
  synth_cmd->add_option("--cycles", spec.cycle_sizes, "cyclic clique sizes")
      ->delimiter(',')
      ->capture_default_str();
  synth_cmd->add_option("--per-pair", spec.outcomes_per_pair, "outcomes per planted pair")
      ->capture_default_str();
  synth_cmd->add_option("--noise", spec.noise, "outcome flip probability in [0, 0.5)")
      ->capture_default_str();
  synth_cmd->add_option("--seed", spec.seed, "random seed")->capture_default_str();
  synth_cmd->add_option("--out", synth_out, "output CSV (winner,loser)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*stats_cmd) return cmd_stats(dataset, players_path, cap, format);
    if (*train_cmd) {
      return cmd_train(dataset, players_path, flags, seed, out_path, trace_path);
    }
    if (*eval_cmd) return cmd_evaluate(checkpoint, dataset, seed);
    if (*cv_cmd) {
      return cmd_cv(dataset, players_path, flags, k, dims, lambdas, seed, cap, format);
    }
    if (*bench_cmd) {
      return cmd_bench(dataset, models, flags, k, dims, lambdas, seed, cap, format);
    }
    if (*synth_cmd) return cmd_synth(spec, synth_out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
