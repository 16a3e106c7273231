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

// Matchup functions and the logistic win-probability link.
//
// Every model maps an ordered pair (a, b) to a real matchup value M(a, b)
// with M(a, b) = -M(b, a), and Pr(a beats b) = 1 / (1 + exp(-M(a, b))).
//
//   Bradley-Terry         M = g_a - g_b
//   Blade-Chest inner     M = blade_a . chest_b - blade_b . chest_a
//   Blade-Chest distance  M = |blade_b - chest_a|^2 - |blade_a - chest_b|^2
//   General               M = a' S b + a' G a - b' G b,  S = S0 - S0'
//
// The general model stores the free matrix S0 and never S itself, so the
// interaction term is antisymmetric whatever values S0 takes.

#ifndef INTRANSIC_MODELS_HPP_
#define INTRANSIC_MODELS_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "intransic/common.hpp"
#include "intransic/dataset.hpp"

namespace intransic {

enum class ModelKind {
  kNaive,
  kBradleyTerry,
  kBladeChestInner,
  kBladeChestDistance,
  kGeneral,
};

inline std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kNaive: return "naive";
    case ModelKind::kBradleyTerry: return "bt";
    case ModelKind::kBladeChestInner: return "bci";
    case ModelKind::kBladeChestDistance: return "bcd";
    case ModelKind::kGeneral: return "general";
  }
  return "unknown";
}

inline ModelKind parse_model_kind(std::string_view name) {
  for (auto kind : {ModelKind::kNaive, ModelKind::kBradleyTerry,
                    ModelKind::kBladeChestInner, ModelKind::kBladeChestDistance,
                    ModelKind::kGeneral}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error("unknown model kind '" + std::string(name) + "'");
}

// Add-one smoothed empirical counts; keys are canonical (lo, hi) pairs.
struct NaiveParams {
  std::map<std::pair<PlayerId, PlayerId>, std::pair<std::uint64_t, std::uint64_t>>
      counts;
};

struct BTParams {
  Eigen::VectorXd gamma;
};

// Row p of `blade` / `chest` holds player p's vectors.
struct BladeChestParams {
  Eigen::MatrixXd blade;
  Eigen::MatrixXd chest;

  Eigen::Index dim() const { return blade.cols(); }
};

struct GeneralParams {
  Eigen::MatrixXd embed;       // players x d
  Eigen::MatrixXd sigma_free;  // d x d, unconstrained
  Eigen::MatrixXd gamma_mat;   // d x d, unconstrained

  Eigen::Index dim() const { return embed.cols(); }

  // Effective interaction matrix; antisymmetric by construction.
  Eigen::MatrixXd sigma() const { return sigma_free - sigma_free.transpose(); }
};

using ModelParams = std::variant<NaiveParams, BTParams, BladeChestParams, GeneralParams>;

struct MatchupModel {
  ModelKind kind = ModelKind::kNaive;
  PlayerTablePtr players;
  ModelParams params;
  // Players seen during fitting. Empty means every player counts as seen.
  std::vector<bool> observed;

  std::size_t num_players() const { return players ? players->size() : 0; }

  bool is_observed(PlayerId p) const {
    return observed.empty() || (p < observed.size() && observed[p]);
  }

  // Embedding width: 1 for BT, d' for Blade-Chest, d for General, 0 for naive.
  Eigen::Index dim() const {
    return std::visit(
        [](const auto& p) -> Eigen::Index {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, NaiveParams>) return 0;
          else if constexpr (std::is_same_v<T, BTParams>) return 1;
          else return p.dim();
        },
        params);
  }
};

// Throws unless the parameter block matches `kind` and the player count.
inline void validate(const MatchupModel& m) {
  if (!m.players) throw Error("model has no player table");
  const auto n = static_cast<Eigen::Index>(m.players->size());
  auto fail = [](const std::string& what) { throw Error("invalid model: " + what); };
  switch (m.kind) {
    case ModelKind::kNaive:
      if (!std::holds_alternative<NaiveParams>(m.params)) fail("expected naive counts");
      break;
    case ModelKind::kBradleyTerry: {
      const auto* p = std::get_if<BTParams>(&m.params);
      if (!p) fail("expected BT parameters");
      if (p->gamma.size() != n) fail("gamma size != player count");
      break;
    }
    case ModelKind::kBladeChestInner:
    case ModelKind::kBladeChestDistance: {
      const auto* p = std::get_if<BladeChestParams>(&m.params);
      if (!p) fail("expected blade-chest parameters");
      if (p->blade.rows() != n || p->chest.rows() != n) fail("row count != player count");
      if (p->chest.cols() != p->blade.cols() || p->dim() < 1) fail("blade/chest dims");
      break;
    }
    case ModelKind::kGeneral: {
      const auto* p = std::get_if<GeneralParams>(&m.params);
      if (!p) fail("expected general parameters");
      const auto d = p->dim();
      if (p->embed.rows() != n) fail("row count != player count");
      if (d < 2) fail("general model requires d > 1");
      if (p->sigma_free.rows() != d || p->sigma_free.cols() != d ||
          p->gamma_mat.rows() != d || p->gamma_mat.cols() != d) {
        fail("matrix shape != d x d");
      }
      break;
    }
  }
  if (!m.observed.empty() && m.observed.size() != m.players->size()) {
    fail("observed mask size != player count");
  }
}

namespace detail {

inline void check_player(Eigen::Index rows, PlayerId p) {
  if (static_cast<Eigen::Index>(p) >= rows) {
    throw Error("unknown player id " + std::to_string(p));
  }
}

}  // namespace detail

// Stable logistic. The result never reaches exactly 0 or 1 for finite m
// (it is clamped to the smallest positive double).
inline double logistic(double m) {
  if (m >= 0.0) return 1.0 / (1.0 + std::exp(-m));
  const double e = std::exp(m);
  return std::max(e / (1.0 + e), std::numeric_limits<double>::denorm_min());
}

// log(logistic(m)) without underflow.
inline double log_logistic(double m) {
  if (m >= 0.0) return -std::log1p(std::exp(-m));
  return m - std::log1p(std::exp(m));
}

inline double matchup_bt(const BTParams& p, PlayerId a, PlayerId b) {
  detail::check_player(p.gamma.size(), a);
  detail::check_player(p.gamma.size(), b);
  return p.gamma[a] - p.gamma[b];
}

inline double matchup_bci(const BladeChestParams& p, PlayerId a, PlayerId b) {
  detail::check_player(p.blade.rows(), a);
  detail::check_player(p.blade.rows(), b);
  return p.blade.row(a).dot(p.chest.row(b)) - p.blade.row(b).dot(p.chest.row(a));
}

inline double matchup_bcd(const BladeChestParams& p, PlayerId a, PlayerId b) {
  detail::check_player(p.blade.rows(), a);
  detail::check_player(p.blade.rows(), b);
  return (p.blade.row(b) - p.chest.row(a)).squaredNorm() -
         (p.blade.row(a) - p.chest.row(b)).squaredNorm();
}

// a'Sb + a'Ga - b'Gb for raw vectors; S is the effective antisymmetric matrix.
inline double general_form(const Eigen::MatrixXd& sigma, const Eigen::MatrixXd& gamma,
                           const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.dot(sigma * b) + a.dot(gamma * a) - b.dot(gamma * b);
}

inline double matchup_general(const GeneralParams& p, PlayerId a, PlayerId b) {
  detail::check_player(p.embed.rows(), a);
  detail::check_player(p.embed.rows(), b);
  return general_form(p.sigma(), p.gamma_mat, p.embed.row(a).transpose(),
                      p.embed.row(b).transpose());
}

// (n_a + 1) / ((n_a + 1) + (n_b + 1)) from the fitted counts; 0.5 if unseen.
inline double naive_probability(const NaiveParams& p, PlayerId a, PlayerId b) {
  auto it = p.counts.find({std::min(a, b), std::max(a, b)});
  if (it == p.counts.end()) return 0.5;
  auto [wins_lo, wins_hi] = it->second;
  if (a > b) std::swap(wins_lo, wins_hi);
  const double na = static_cast<double>(wins_lo) + 1.0;
  const double nb = static_cast<double>(wins_hi) + 1.0;
  return na / (na + nb);
}

// Log-odds of the smoothed empirical probability.
inline double matchup_naive(const NaiveParams& p, PlayerId a, PlayerId b) {
  auto it = p.counts.find({std::min(a, b), std::max(a, b)});
  if (it == p.counts.end()) return 0.0;
  auto [wins_lo, wins_hi] = it->second;
  if (a > b) std::swap(wins_lo, wins_hi);
  return std::log(static_cast<double>(wins_lo) + 1.0) -
         std::log(static_cast<double>(wins_hi) + 1.0);
}

inline NaiveParams fit_naive_params(const Dataset& train) {
  NaiveParams p;
  for (const auto& r : train.records()) p.counts[{r.a, r.b}] = {r.n_a, r.n_b};
  return p;
}

inline MatchupModel fit_naive(const Dataset& train) {
  std::vector<bool> seen = train.observed_players();
  return {ModelKind::kNaive, train.player_table(), fit_naive_params(train),
          std::move(seen)};
}

inline double matchup_value(const MatchupModel& m, PlayerId a, PlayerId b) {
  switch (m.kind) {
    case ModelKind::kNaive:
      return matchup_naive(std::get<NaiveParams>(m.params), a, b);
    case ModelKind::kBradleyTerry:
      return matchup_bt(std::get<BTParams>(m.params), a, b);
    case ModelKind::kBladeChestInner:
      return matchup_bci(std::get<BladeChestParams>(m.params), a, b);
    case ModelKind::kBladeChestDistance:
      return matchup_bcd(std::get<BladeChestParams>(m.params), a, b);
    case ModelKind::kGeneral:
      return matchup_general(std::get<GeneralParams>(m.params), a, b);
  }
  return 0.0;
}

inline double win_probability(const MatchupModel& m, PlayerId a, PlayerId b) {
  if (m.kind == ModelKind::kNaive) {
    return naive_probability(std::get<NaiveParams>(m.params), a, b);
  }
  return logistic(matchup_value(m, a, b));
}

// Pr(b beats a) as the complement of win_probability(m, a, b).
inline double loss_probability(const MatchupModel& m, PlayerId a, PlayerId b) {
  return 1.0 - win_probability(m, a, b);
}

// The more likely winner; an exact tie is settled by a seeded coin.
inline PlayerId predict_winner(const MatchupModel& m, PlayerId a, PlayerId b,
                               std::uint64_t seed) {
  const double value = matchup_value(m, a, b);
  if (value > 0.0) return a;
  if (value < 0.0) return b;
  return coin_flip_winner(seed, a, b);
}

// Embeds a Blade-Chest model into the general family: each player becomes
// [blade; chest], S = [[0, I], [-I, 0]] and G = 0, which makes
// M_general(a, b) = M_bci(a, b) for every pair.
inline GeneralParams degenerate_to_bci(const BladeChestParams& bc) {
  const Eigen::Index d = bc.dim();
  GeneralParams g;
  g.embed.resize(bc.blade.rows(), 2 * d);
  g.embed << bc.blade, bc.chest;
  g.sigma_free = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  g.sigma_free.topRightCorner(d, d).setIdentity();
  g.gamma_mat = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  return g;
}

// Draws every parameter i.i.d. from U[-scale, scale]. Draw order is player
// rows first (blade before chest), then S0, then G.
inline MatchupModel init_params(ModelKind kind, PlayerTablePtr players, int dim,
                                double scale, std::uint64_t seed) {
  if (!players) throw Error("init_params: null player table");
  if (kind == ModelKind::kGeneral && dim < 2) {
    throw Error("general model requires dim > 1");
  }
  if (kind != ModelKind::kNaive && kind != ModelKind::kBradleyTerry && dim < 1) {
    throw Error("dim must be at least 1");
  }
  if (!(scale >= 0.0)) throw Error("init scale must be non-negative");
  const auto n = static_cast<Eigen::Index>(players->size());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-scale, scale);
  auto fill = [&](Eigen::MatrixXd& mat) {
    for (Eigen::Index i = 0; i < mat.rows(); ++i) {
      for (Eigen::Index j = 0; j < mat.cols(); ++j) {
        mat(i, j) = scale == 0.0 ? 0.0 : unif(rng);
      }
    }
  };

  MatchupModel model{kind, std::move(players), NaiveParams{}, {}};
  switch (kind) {
    case ModelKind::kNaive:
      break;
    case ModelKind::kBradleyTerry: {
      Eigen::MatrixXd g(n, 1);
      fill(g);
      model.params = BTParams{g.col(0)};
      break;
    }
    case ModelKind::kBladeChestInner:
    case ModelKind::kBladeChestDistance: {
      Eigen::MatrixXd both(n, 2 * dim);
      fill(both);
      model.params = BladeChestParams{both.leftCols(dim), both.rightCols(dim)};
      break;
    }
    case ModelKind::kGeneral: {
      GeneralParams p;
      p.embed.resize(n, dim);
      p.sigma_free.resize(dim, dim);
      p.gamma_mat.resize(dim, dim);
      fill(p.embed);
      fill(p.sigma_free);
      fill(p.gamma_mat);
      model.params = std::move(p);
      break;
    }
  }
  return model;
}

// Trainable parameter values in a fixed order: BT gamma; Blade-Chest blade
// rows then chest rows; General embed rows, S0, G (all row-major).
inline std::vector<double> flatten(const MatchupModel& m) {
  std::vector<double> out;
  auto append = [&](const Eigen::MatrixXd& mat) {
    for (Eigen::Index i = 0; i < mat.rows(); ++i) {
      for (Eigen::Index j = 0; j < mat.cols(); ++j) out.push_back(mat(i, j));
    }
  };
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BTParams>) {
          append(p.gamma);
        } else if constexpr (std::is_same_v<T, BladeChestParams>) {
          append(p.blade);
          append(p.chest);
        } else if constexpr (std::is_same_v<T, GeneralParams>) {
          append(p.embed);
          append(p.sigma_free);
          append(p.gamma_mat);
        }
      },
      m.params);
  return out;
}

// Inverse of flatten; `values` must have exactly parameter_count(m) entries.
inline void unflatten(MatchupModel& m, std::span<const double> values) {
  std::size_t pos = 0;
  auto take = [&](auto& mat) {
    for (Eigen::Index i = 0; i < mat.rows(); ++i) {
      for (Eigen::Index j = 0; j < mat.cols(); ++j) {
        if (pos >= values.size()) throw Error("unflatten: too few values");
        mat(i, j) = values[pos++];
      }
    }
  };
  std::visit(
      [&](auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BTParams>) {
          take(p.gamma);
        } else if constexpr (std::is_same_v<T, BladeChestParams>) {
          take(p.blade);
          take(p.chest);
        } else if constexpr (std::is_same_v<T, GeneralParams>) {
          take(p.embed);
          take(p.sigma_free);
          take(p.gamma_mat);
        }
      },
      m.params);
  if (pos != values.size()) throw Error("unflatten: too many values");
}

inline std::size_t parameter_count(const MatchupModel& m) { return flatten(m).size(); }

}  // namespace intransic

#endif  // INTRANSIC_MODELS_HPP_
