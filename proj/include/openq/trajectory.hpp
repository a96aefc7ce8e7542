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

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "openq/quantum_core.hpp"

namespace openq {

/// Density-matrix time series plus provenance.
struct Trajectory {
  std::vector<double> times;
  std::vector<Matrix> states;
  std::map<std::string, std::string> metadata;

  std::size_t size() const { return times.size(); }
};

/// Complex amplitude time series, e.g. ψ₁(t).
struct AmplitudeSeries {
  std::vector<double> times;
  std::vector<Complex> values;
};

/// Uniform grid of `points` values on [0, t_max]. points >= 2.
std::vector<double> uniform_grid(double t_max, std::size_t points);

/// Throws InvalidInput unless times are finite, >= 0 and non-decreasing.
void check_time_grid(std::span<const double> times);

/// Writes t, rho_ij_re, rho_ij_im for each requested (i, j), then trace and
/// min_eig. Values use 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          std::span<const std::pair<int, int>> elements);

/// All (i, j) pairs of a dim x dim matrix in row-major order.
std::vector<std::pair<int, int>> all_elements(int dim);

/// Writes t, psi_re, psi_im, psi_abs2.
void write_amplitude_csv(std::ostream& os, const AmplitudeSeries& series);

}  // namespace openq
