// Copyright 2026 The openq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "openq/serialization.hpp"

#include <string>

namespace openq {

nlohmann::json matrix_to_json(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("matrix_to_json: matrix must be square");
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return {{"dim", m.rows()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw InvalidInput("matrix JSON needs \"dim\" and \"entries\"");
  }
  for (const auto& [key, _] : j.items()) {
    if (key != "dim" && key != "entries") throw InvalidInput("matrix JSON: unknown key \"" + key + "\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long>() < 1) {
    throw InvalidInput("matrix JSON: dim must be a positive integer");
  }
  const auto dim = static_cast<Eigen::Index>(j["dim"].get<long>());
  const auto& entries = j["entries"];
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != dim * dim) {
    throw InvalidInput("matrix JSON: expected " + std::to_string(dim * dim) + " entries");
  }
  Matrix m(dim, dim);
  for (Eigen::Index k = 0; k < dim * dim; ++k) {
    const auto& e = entries[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw InvalidInput("matrix JSON: entry " + std::to_string(k) + " is not [re, im]");
    }
    m(k / dim, k % dim) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

nlohmann::json trajectory_to_json(const Trajectory& traj) {
  nlohmann::json states = nlohmann::json::array();
  for (const Matrix& m : traj.states) states.push_back(matrix_to_json(m));
  return {{"times", traj.times}, {"states", std::move(states)}, {"metadata", traj.metadata}};
}

Trajectory trajectory_from_json(const nlohmann::json& j) {
  Trajectory traj;
  try {
    traj.times = j.at("times").get<std::vector<double>>();
    for (const auto& s : j.at("states")) traj.states.push_back(matrix_from_json(s));
    if (j.contains("metadata")) {
      traj.metadata = j["metadata"].get<std::map<std::string, std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("trajectory JSON: ") + e.what());
  }
  if (traj.times.size() != traj.states.size()) {
    throw InvalidInput("trajectory JSON: times and states differ in length");
  }
  return traj;
}

}  // namespace openq
