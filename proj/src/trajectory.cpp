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

#include "openq/trajectory.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

namespace openq {

std::vector<double> uniform_grid(double t_max, std::size_t points) {
  if (points < 2) throw InvalidInput("uniform_grid: need at least 2 points");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw InvalidInput("uniform_grid: t_max must be > 0");
  std::vector<double> out(points);
  const double h = t_max / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = h * static_cast<double>(i);
  out.back() = t_max;
  return out;
}

void check_time_grid(std::span<const double> times) {
  double prev = 0.0;
  for (double t : times) {
    if (!std::isfinite(t) || t < prev) {
      throw InvalidInput("time grid must be finite, >= 0 and non-decreasing");
    }
    prev = t;
  }
}

std::vector<std::pair<int, int>> all_elements(int dim) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) out.emplace_back(i, j);
  }
  return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          std::span<const std::pair<int, int>> elements) {
  os << "t";
  for (auto [i, j] : elements) {
    // rho_01 style while indices are single digits, rho_3_12 beyond that
    const std::string tag = (i < 10 && j < 10)
                                ? std::to_string(i) + std::to_string(j)
                                : std::to_string(i) + "_" + std::to_string(j);
    os << ",rho_" << tag << "_re,rho_" << tag << "_im";
  }
  os << ",trace,min_eig\n";
  os << std::setprecision(17);
  for (std::size_t r = 0; r < traj.size(); ++r) {
    const Matrix& m = traj.states[r];
    os << traj.times[r];
    for (auto [i, j] : elements) os << ',' << m(i, j).real() << ',' << m(i, j).imag();
    os << ',' << m.trace().real() << ',' << min_hermitian_eigenvalue(m) << '\n';
  }
}

void write_amplitude_csv(std::ostream& os, const AmplitudeSeries& series) {
  os << "t,psi_re,psi_im,psi_abs2\n" << std::setprecision(17);
  for (std::size_t r = 0; r < series.times.size(); ++r) {
    const Complex v = series.values[r];
    os << series.times[r] << ',' << v.real() << ',' << v.imag() << ',' << std::norm(v) << '\n';
  }
}

}  // namespace openq
