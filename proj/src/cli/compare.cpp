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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "openq/cli.hpp"

namespace openq::cli {

std::optional<std::size_t> CsvTable::column(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) return std::nullopt;
  return static_cast<std::size_t>(it - columns.begin());
}

CsvTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CsvTable table;
  if (!std::getline(in, line)) throw ConfigError("CSV: empty input");
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) table.columns.push_back(cell);
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream rs(line);
    std::string cell;
    while (std::getline(rs, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ConfigError("CSV line " + std::to_string(line_no) + ": not a number: \"" + cell + "\"");
      }
    }
    if (row.size() != table.columns.size()) {
      throw ConfigError("CSV line " + std::to_string(line_no) + ": expected " +
                        std::to_string(table.columns.size()) + " fields");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

CompareReport compare(const CsvTable& a, const CsvTable& b) {
  const auto ta = a.column("t"), tb = b.column("t");
  if (!ta || !tb) throw ConfigError("compare: both tables need a \"t\" column");
  if (a.rows.size() != b.rows.size()) throw ConfigError("compare: grids differ in length");
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    const double x = a.rows[r][*ta], y = b.rows[r][*tb];
    if (std::abs(x - y) > 1e-12 * std::max({1.0, std::abs(x), std::abs(y)})) {
      throw ConfigError("compare: time grids differ at row " + std::to_string(r));
    }
  }
  CompareReport rep;
  rep.rows = a.rows.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t c = 0; c < a.columns.size(); ++c) {
    if (c == *ta) continue;
    if (auto cb = b.column(a.columns[c])) {
      pairs.emplace_back(c, *cb);
      rep.columns.push_back(a.columns[c]);
    }
  }
  if (pairs.empty()) throw ConfigError("compare: no common columns besides t");

  std::vector<double> sq(rep.rows, 0.0);
  for (std::size_t r = 0; r < rep.rows; ++r) {
    for (auto [ca, cb] : pairs) {
      const double d = a.rows[r][ca] - b.rows[r][cb];
      rep.sup_norm = std::max(rep.sup_norm, std::abs(d));
      sq[r] += d * d;
    }
  }
  double integral = 0.0;
  for (std::size_t r = 1; r < rep.rows; ++r) {
    integral += 0.5 * (sq[r] + sq[r - 1]) * (a.rows[r][*ta] - a.rows[r - 1][*ta]);
  }
  rep.l2_norm = std::sqrt(integral);
  return rep;
}

nlohmann::json to_json(const CompareReport& r) {
  return {{"sup_norm", r.sup_norm}, {"l2_norm", r.l2_norm}, {"rows", r.rows}, {"columns", r.columns}};
}

}  // namespace openq::cli
