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

// JSON model checkpoints.
//
//   {
//     "format": "intransic-model-v1",
//     "kind": "general",
//     "dim": 2,
//     "players": ["rock", "paper", ...],
//     "observed": [true, ...],            // omitted when all players seen
//     "params": {"embed": [...], "sigma_free": [...], "gamma_mat": [...]}
//   }
//
// Arrays are row-major. BT stores "gamma"; Blade-Chest stores "blade" and
// "chest"; naive stores "counts" as [a, b, n_a, n_b] rows of player ids.

#ifndef INTRANSIC_CHECKPOINT_HPP_
#define INTRANSIC_CHECKPOINT_HPP_

#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "intransic/common.hpp"
#include "intransic/dataset.hpp"
#include "intransic/dataset_io.hpp"
#include "intransic/models.hpp"

namespace intransic {

inline constexpr const char* kCheckpointFormat = "intransic-model-v1";

namespace detail {

inline nlohmann::ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  }
  return out;
}

inline Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, Eigen::Index rows,
                                        Eigen::Index cols, const char* name) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(rows * cols)) {
    throw Error(std::string("checkpoint: '") + name + "' has the wrong size");
  }
  Eigen::MatrixXd m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j2 = 0; j2 < cols; ++j2) m(i, j2) = j[k++].get<double>();
  }
  return m;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const MatchupModel& m) {
  validate(m);
  nlohmann::ordered_json j;
  j["format"] = kCheckpointFormat;
  j["kind"] = std::string(to_string(m.kind));
  j["dim"] = m.dim();
  j["players"] = m.players->labels();
  if (!m.observed.empty()) {
    nlohmann::ordered_json seen = nlohmann::ordered_json::array();
    for (bool b : m.observed) seen.push_back(b);
    j["observed"] = std::move(seen);
  }
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, NaiveParams>) {
          nlohmann::ordered_json rows = nlohmann::ordered_json::array();
          for (const auto& [pair, c] : p.counts) {
            rows.push_back({pair.first, pair.second, c.first, c.second});
          }
          params["counts"] = std::move(rows);
        } else if constexpr (std::is_same_v<T, BTParams>) {
          params["gamma"] = detail::matrix_to_json(p.gamma);
        } else if constexpr (std::is_same_v<T, BladeChestParams>) {
          params["blade"] = detail::matrix_to_json(p.blade);
          params["chest"] = detail::matrix_to_json(p.chest);
        } else {
          params["embed"] = detail::matrix_to_json(p.embed);
          params["sigma_free"] = detail::matrix_to_json(p.sigma_free);
          params["gamma_mat"] = detail::matrix_to_json(p.gamma_mat);
        }
      },
      m.params);
  j["params"] = std::move(params);
  return j;
}

inline MatchupModel model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kCheckpointFormat) {
      throw Error("checkpoint: unsupported format '" + j.at("format").get<std::string>() +
                  "'");
    }
    MatchupModel m;
    m.kind = parse_model_kind(j.at("kind").get<std::string>());
    m.players = std::make_shared<const PlayerTable>(
        j.at("players").get<std::vector<std::string>>());
    if (j.contains("observed")) m.observed = j.at("observed").get<std::vector<bool>>();
    const auto n = static_cast<Eigen::Index>(m.players->size());
    const auto d = j.at("dim").get<Eigen::Index>();
    const auto& params = j.at("params");
    switch (m.kind) {
      case ModelKind::kNaive: {
        NaiveParams p;
        for (const auto& row : params.at("counts")) {
          const auto a = row.at(0).get<PlayerId>();
          const auto b = row.at(1).get<PlayerId>();
          if (a >= b || b >= n) throw Error("checkpoint: bad naive pair");
          p.counts[{a, b}] = {row.at(2).get<std::uint64_t>(), row.at(3).get<std::uint64_t>()};
        }
        m.params = std::move(p);
        break;
      }
      case ModelKind::kBradleyTerry:
        m.params = BTParams{detail::matrix_from_json(params.at("gamma"), n, 1, "gamma").col(0)};
        break;
      case ModelKind::kBladeChestInner:
      case ModelKind::kBladeChestDistance:
        m.params = BladeChestParams{detail::matrix_from_json(params.at("blade"), n, d, "blade"),
                                    detail::matrix_from_json(params.at("chest"), n, d, "chest")};
        break;
      case ModelKind::kGeneral:
        m.params = GeneralParams{
            detail::matrix_from_json(params.at("embed"), n, d, "embed"),
            detail::matrix_from_json(params.at("sigma_free"), d, d, "sigma_free"),
            detail::matrix_from_json(params.at("gamma_mat"), d, d, "gamma_mat")};
        break;
    }
    validate(m);
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("checkpoint: ") + e.what());
  }
}

inline void save_model(const MatchupModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write checkpoint '" + path + "'");
  out << to_json(m).dump(2) << '\n';
}

inline MatchupModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open checkpoint '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("checkpoint '" + path + "': " + e.what());
  }
  return model_from_json(j);
}

}  // namespace intransic

#endif  // INTRANSIC_CHECKPOINT_HPP_
