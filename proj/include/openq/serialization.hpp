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

#pragma once

// JSON forms: a matrix is {"dim": n, "entries": [[re, im], ...]} in
// row-major order; a trajectory is {"times": [...], "states": [matrix, ...],
// "metadata": {...}}.

#include <json.hpp>

#include "openq/trajectory.hpp"

namespace openq {

nlohmann::json matrix_to_json(const Matrix& m);

/// Throws InvalidInput on a malformed object.
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json trajectory_to_json(const Trajectory& traj);
Trajectory trajectory_from_json(const nlohmann::json& j);

}  // namespace openq
