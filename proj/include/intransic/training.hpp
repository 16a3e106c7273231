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

// Regularized maximum likelihood by stochastic gradient ascent.
//
// The objective is
//
//   Q = sum_t [n_a log p_t + n_b log(1 - p_t)] - l1 R1 - l2 R2 - l3 R3
//
// with R1 = sum_p |x_p|^2 / 2 over every per-player parameter, R2 = |S0|_F
// and R3 = |G|_F (the last two only exist for the general model).
//
// One epoch is max(N, min_epoch_updates) updates, each on a record drawn
// uniformly with replacement. The floor keeps epochs on tiny datasets long
// enough for validation checks and patience to mean something. Every update
// also applies 1/N of the regularizer gradient, so N updates apply it once.
// The learning rate is divided by the mean number of outcomes per record: a
// record's gradient grows with its counts, and without the division the
// usable rate would depend on how often each pair was played. The expected step stays parallel to grad Q.

#ifndef INTRANSIC_TRAINING_HPP_
#define INTRANSIC_TRAINING_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "intransic/common.hpp"
#include "intransic/dataset.hpp"
#include "intransic/metrics.hpp"
#include "intransic/models.hpp"

namespace intransic {

struct TrainConfig {
  int dim = 2;
  double learning_rate = 0.05;
  int epochs = 500;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  std::uint64_t seed = 0;
  // Epochs without validation improvement before stopping; 0 disables.
  int patience = 20;
  double eval_fraction = 0.1;
  double init_scale = 0.1;
  std::size_t min_epoch_updates = 100;

  TrainConfig& set_lambda(double lambda) {
    lambda1 = lambda2 = lambda3 = lambda;
    return *this;
  }

  void validate() const {
    if (!(learning_rate > 0.0)) throw Error("learning rate must be positive");
    if (epochs < 1) throw Error("epochs must be at least 1");
    if (!(lambda1 >= 0.0 && lambda2 >= 0.0 && lambda3 >= 0.0)) {
      throw Error("regularization weights must be non-negative");
    }
    if (patience < 0) throw Error("patience must be non-negative");
    if (!(eval_fraction >= 0.0 && eval_fraction < 1.0)) {
      throw Error("eval fraction must lie in [0, 1)");
    }
    if (!(init_scale >= 0.0)) throw Error("init scale must be non-negative");
  }
};

enum class StopReason { kMaxEpochs, kEarlyStop };

inline std::string_view to_string(StopReason r) {
  return r == StopReason::kMaxEpochs ? "max_epochs" : "early_stop";
}

struct EpochRecord {
  int epoch = 0;
  double objective = 0.0;
  double val_accuracy = 0.0;
};

struct TrainTrace {
  double initial_objective = 0.0;
  std::vector<EpochRecord> epochs;
  StopReason stop = StopReason::kMaxEpochs;
  int best_epoch = 0;

  void write_csv(std::ostream& out) const {
    out << "epoch,objective,val_accuracy\n";
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::setprecision(12);
    for (const auto& e : epochs) {
      out << e.epoch << ',' << e.objective << ',' << e.val_accuracy << '\n';
    }
    out.flags(flags);
    out.precision(precision);
  }
};

struct TrainResult {
  MatchupModel model;
  TrainTrace trace;
};

// sum over records of n_a log p + n_b log(1 - p).
inline double log_likelihood(const MatchupModel& m, const Dataset& d) {
  double total = 0.0;
  for (const auto& r : d.records()) {
    double log_p = 0.0;
    double log_q = 0.0;
    if (m.kind == ModelKind::kNaive) {
      const double p = win_probability(m, r.a, r.b);
      log_p = std::log(p);
      log_q = std::log1p(-p);
    } else {
      const double value = matchup_value(m, r.a, r.b);
      log_p = log_logistic(value);
      log_q = log_logistic(-value);
    }
    if (r.n_a) total += static_cast<double>(r.n_a) * log_p;
    if (r.n_b) total += static_cast<double>(r.n_b) * log_q;
  }
  return total;
}

struct Regularizers {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
};

inline Regularizers regularizers(const MatchupModel& m) {
  Regularizers r;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BTParams>) {
          r.r1 = 0.5 * p.gamma.squaredNorm();
        } else if constexpr (std::is_same_v<T, BladeChestParams>) {
          r.r1 = 0.5 * (p.blade.squaredNorm() + p.chest.squaredNorm());
        } else if constexpr (std::is_same_v<T, GeneralParams>) {
          r.r1 = 0.5 * p.embed.squaredNorm();
          r.r2 = p.sigma_free.norm();
          r.r3 = p.gamma_mat.norm();
        }
      },
      m.params);
  return r;
}

inline double objective(const MatchupModel& m, const Dataset& d, const TrainConfig& cfg) {
  const Regularizers r = regularizers(m);
  return log_likelihood(m, d) - cfg.lambda1 * r.r1 - cfg.lambda2 * r.r2 -
         cfg.lambda3 * r.r3;
}

// Gradient of one record's log-likelihood contribution. For Blade-Chest the
// player vectors are [blade; chest]; the matrix parts are only set for the
// general model.
struct TupleGradient {
  double scale = 0.0;  // n_a (1 - p) - n_b p
  Eigen::VectorXd player_a;
  Eigen::VectorXd player_b;
  Eigen::MatrixXd sigma_free;
  Eigen::MatrixXd gamma_mat;
};

inline TupleGradient gradients(const MatchupModel& m, const Matchup& t) {
  if (m.kind == ModelKind::kNaive) throw Error("naive model has no gradient");
  const double value = matchup_value(m, t.a, t.b);
  TupleGradient g;
  g.scale = static_cast<double>(t.n_a) * logistic(-value) -
            static_cast<double>(t.n_b) * logistic(value);
  const double s = g.scale;

  switch (m.kind) {
    case ModelKind::kBradleyTerry:
      g.player_a = Eigen::VectorXd::Constant(1, s);
      g.player_b = Eigen::VectorXd::Constant(1, -s);
      break;
    case ModelKind::kBladeChestInner: {
      const auto& p = std::get<BladeChestParams>(m.params);
      const Eigen::Index d = p.dim();
      g.player_a.resize(2 * d);
      g.player_b.resize(2 * d);
      g.player_a << s * p.chest.row(t.b).transpose(), -s * p.blade.row(t.b).transpose();
      g.player_b << -s * p.chest.row(t.a).transpose(), s * p.blade.row(t.a).transpose();
      break;
    }
    case ModelKind::kBladeChestDistance: {
      const auto& p = std::get<BladeChestParams>(m.params);
      const Eigen::Index d = p.dim();
      const Eigen::VectorXd ba = (p.blade.row(t.b) - p.chest.row(t.a)).transpose();
      const Eigen::VectorXd ab = (p.blade.row(t.a) - p.chest.row(t.b)).transpose();
      g.player_a.resize(2 * d);
      g.player_b.resize(2 * d);
      g.player_a << -2.0 * s * ab, -2.0 * s * ba;
      g.player_b << 2.0 * s * ba, 2.0 * s * ab;
      break;
    }
    case ModelKind::kGeneral: {
      const auto& p = std::get<GeneralParams>(m.params);
      const Eigen::MatrixXd sigma = p.sigma();
      const Eigen::MatrixXd gamma_sym = p.gamma_mat + p.gamma_mat.transpose();
      const Eigen::VectorXd a = p.embed.row(t.a).transpose();
      const Eigen::VectorXd b = p.embed.row(t.b).transpose();
      g.player_a = s * (sigma * b + gamma_sym * a);
      g.player_b = s * (sigma.transpose() * a - gamma_sym * b);
      g.sigma_free = s * (a * b.transpose() - b * a.transpose());
      g.gamma_mat = s * (a * a.transpose() - b * b.transpose());
      break;
    }
    case ModelKind::kNaive:
      break;
  }
  return g;
}

namespace detail {

// d|X|_F / dX, with subgradient 0 at X = 0.
inline Eigen::MatrixXd frobenius_gradient(const Eigen::MatrixXd& x) {
  const double norm = x.norm();
  if (norm == 0.0) return Eigen::MatrixXd::Zero(x.rows(), x.cols());
  return x / norm;
}

inline bool all_finite(const MatchupModel& m) {
  return std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BTParams>) {
          return p.gamma.allFinite();
        } else if constexpr (std::is_same_v<T, BladeChestParams>) {
          return p.blade.allFinite() && p.chest.allFinite();
        } else if constexpr (std::is_same_v<T, GeneralParams>) {
          return p.embed.allFinite() && p.sigma_free.allFinite() &&
                 p.gamma_mat.allFinite();
        } else {
          return true;
        }
      },
      m.params);
}

}  // namespace detail

// Gradient of  loglik(t) - weight * (l1 R1 + l2 R2 + l3 R3)  laid out like
// flatten(m). Dense; meant for verification rather than training.
inline std::vector<double> flat_gradient(const MatchupModel& m, const Matchup& t,
                                         const TrainConfig& cfg, double weight) {
  const TupleGradient g = gradients(m, t);
  MatchupModel grad = m;
  std::visit(
      [&](auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BTParams>) {
          p.gamma *= -weight * cfg.lambda1;
          p.gamma[t.a] += g.player_a[0];
          p.gamma[t.b] += g.player_b[0];
        } else if constexpr (std::is_same_v<T, BladeChestParams>) {
          const Eigen::Index d = p.dim();
          p.blade *= -weight * cfg.lambda1;
          p.chest *= -weight * cfg.lambda1;
          p.blade.row(t.a) += g.player_a.head(d).transpose();
          p.chest.row(t.a) += g.player_a.tail(d).transpose();
          p.blade.row(t.b) += g.player_b.head(d).transpose();
          p.chest.row(t.b) += g.player_b.tail(d).transpose();
        } else if constexpr (std::is_same_v<T, GeneralParams>) {
          p.embed *= -weight * cfg.lambda1;
          p.embed.row(t.a) += g.player_a.transpose();
          p.embed.row(t.b) += g.player_b.transpose();
          p.sigma_free = g.sigma_free -
                         weight * cfg.lambda2 * detail::frobenius_gradient(p.sigma_free);
          p.gamma_mat =
              g.gamma_mat - weight * cfg.lambda3 * detail::frobenius_gradient(p.gamma_mat);
        }
      },
      grad.params);
  return flatten(grad);
}

// One ascent step of size `lr` on record t, with the regularizer gradient
// weighted by `reg_weight` (1/N during training).
inline void sgd_step(MatchupModel& m, const Matchup& t, double lr, const TrainConfig& cfg,
                     double reg_weight) {
  const TupleGradient g = gradients(m, t);
  const double shrink = 1.0 - lr * reg_weight * cfg.lambda1;
  std::visit(
      [&](auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BTParams>) {
          if (cfg.lambda1 != 0.0) p.gamma *= shrink;
          p.gamma[t.a] += lr * g.player_a[0];
          p.gamma[t.b] += lr * g.player_b[0];
        } else if constexpr (std::is_same_v<T, BladeChestParams>) {
          const Eigen::Index d = p.dim();
          if (cfg.lambda1 != 0.0) {
            p.blade *= shrink;
            p.chest *= shrink;
          }
          p.blade.row(t.a) += lr * g.player_a.head(d).transpose();
          p.chest.row(t.a) += lr * g.player_a.tail(d).transpose();
          p.blade.row(t.b) += lr * g.player_b.head(d).transpose();
          p.chest.row(t.b) += lr * g.player_b.tail(d).transpose();
        } else if constexpr (std::is_same_v<T, GeneralParams>) {
          if (cfg.lambda1 != 0.0) p.embed *= shrink;
          p.embed.row(t.a) += lr * g.player_a.transpose();
          p.embed.row(t.b) += lr * g.player_b.transpose();
          Eigen::MatrixXd sigma_step = g.sigma_free;
          if (cfg.lambda2 != 0.0) {
            sigma_step -= reg_weight * cfg.lambda2 * detail::frobenius_gradient(p.sigma_free);
          }
          Eigen::MatrixXd gamma_step = g.gamma_mat;
          if (cfg.lambda3 != 0.0) {
            gamma_step -= reg_weight * cfg.lambda3 * detail::frobenius_gradient(p.gamma_mat);
          }
          p.sigma_free += lr * sigma_step;
          p.gamma_mat += lr * gamma_step;
        }
      },
      m.params);
}

// Trains on `train`, selecting the epoch with the best accuracy on
// `validation` (ties go to the higher validation log-likelihood). An empty
// validation set falls back to the training set.
inline TrainResult sgd_train(ModelKind kind, const Dataset& train,
                             const Dataset& validation, const TrainConfig& cfg) {
  cfg.validate();
  if (kind == ModelKind::kNaive) {
    throw Error("naive model has no trainable parameters; use fit_naive");
  }
  if (train.empty()) throw Error("sgd_train: empty training set");
  const Dataset& val = validation.empty() ? train : validation;

  MatchupModel model = init_params(kind, train.player_table(), cfg.dim, cfg.init_scale,
                                   derive_seed(cfg.seed, 1));
  model.observed = train.observed_players();
  std::mt19937_64 rng(derive_seed(cfg.seed, 2));
  const std::uint64_t tie_seed = derive_seed(cfg.seed, 3);
  std::uniform_int_distribution<std::size_t> pick(0, train.size() - 1);
  const double reg_weight = 1.0 / static_cast<double>(train.size());
  const double lr = cfg.learning_rate * static_cast<double>(train.size()) /
                    static_cast<double>(train.total_outcomes());

  TrainResult result{model, {}};
  TrainTrace& trace = result.trace;
  trace.initial_objective = objective(model, train, cfg);

  double best_accuracy = -1.0;
  double best_val_ll = -std::numeric_limits<double>::infinity();
  int since_best = 0;
  const std::size_t steps = std::max(train.size(), cfg.min_epoch_updates);
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    for (std::size_t step = 0; step < steps; ++step) {
      sgd_step(model, train.records()[pick(rng)], lr, cfg, reg_weight);
    }
    const double obj = objective(model, train, cfg);
    if (!detail::all_finite(model) || !std::isfinite(obj)) {
      throw TrainingDiverged("parameters became non-finite at epoch " +
                             std::to_string(epoch) + "; lower the learning rate");
    }
    const double val_accuracy = test_accuracy(model, val, tie_seed);
    const double val_ll = log_likelihood(model, val);
    trace.epochs.push_back({epoch, obj, val_accuracy});

    if (val_accuracy > best_accuracy ||
        (val_accuracy == best_accuracy && val_ll > best_val_ll)) {
      best_accuracy = val_accuracy;
      best_val_ll = val_ll;
      result.model = model;
      trace.best_epoch = epoch;
      since_best = 0;
    } else if (cfg.patience > 0 && ++since_best >= cfg.patience) {
      trace.stop = StopReason::kEarlyStop;
      break;
    }
  }
  return result;
}

// Holds out cfg.eval_fraction of the training outcomes for model selection.
inline TrainResult sgd_train(ModelKind kind, const Dataset& train, const TrainConfig& cfg) {
  cfg.validate();
  if (train.empty()) throw Error("sgd_train: empty training set");
  Holdout split = split_holdout(train, cfg.eval_fraction, derive_seed(cfg.seed, 4));
  if (split.train.empty()) split = {train, Dataset()};
  return sgd_train(kind, split.train, split.holdout, cfg);
}

// Compares flat_gradient with central differences of the same per-record
// objective on a random model and record. Returns the worst relative error
// |analytic - numeric| / max(1, |analytic|, |numeric|) over all parameters.
inline double finite_difference_check(ModelKind kind, std::uint64_t seed, int dim = 3,
                                      double step = 1e-5) {
  if (kind == ModelKind::kNaive) throw Error("naive model has no gradient");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> n_players(2, 5);
  const auto players =
      std::make_shared<const PlayerTable>(PlayerTable::numbered(n_players(rng)));
  MatchupModel m = init_params(kind, players, dim, 1.0, rng());

  std::uniform_int_distribution<PlayerId> pick(0, static_cast<PlayerId>(players->size() - 1));
  std::uniform_int_distribution<std::uint64_t> count(0, 6);
  Matchup t;
  t.a = pick(rng);
  do { t.b = pick(rng); } while (t.b == t.a);
  do {
    t.n_a = count(rng);
    t.n_b = count(rng);
  } while (t.total() == 0);

  TrainConfig cfg;
  std::uniform_real_distribution<double> lambda(0.0, 0.5);
  cfg.lambda1 = lambda(rng);
  cfg.lambda2 = lambda(rng);
  cfg.lambda3 = lambda(rng);

  auto value = [&](const MatchupModel& probe) {
    const Regularizers r = regularizers(probe);
    const double v = matchup_value(probe, t.a, t.b);
    return static_cast<double>(t.n_a) * log_logistic(v) +
           static_cast<double>(t.n_b) * log_logistic(-v) - cfg.lambda1 * r.r1 -
           cfg.lambda2 * r.r2 - cfg.lambda3 * r.r3;
  };

  const std::vector<double> analytic = flat_gradient(m, t, cfg, 1.0);
  std::vector<double> theta = flatten(m);
  MatchupModel probe = m;
  double worst = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double saved = theta[i];
    theta[i] = saved + step;
    unflatten(probe, theta);
    const double up = value(probe);
    theta[i] = saved - step;
    unflatten(probe, theta);
    const double down = value(probe);
    theta[i] = saved;
    const double numeric = (up - down) / (2.0 * step);
    const double scale = std::max({1.0, std::abs(analytic[i]), std::abs(numeric)});
    worst = std::max(worst, std::abs(analytic[i] - numeric) / scale);
  }
  return worst;
}

}  // namespace intransic

#endif  // INTRANSIC_TRAINING_HPP_
