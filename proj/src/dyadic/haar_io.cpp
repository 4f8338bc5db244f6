/*
 * Copyright 2026 The dyadiclab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dyadiclab/dyadic.hpp"

namespace dyadiclab {

nlohmann::json to_json(const HaarExpansion& expansion) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& [interval, c] : expansion.coefficients()) {
    coeffs.push_back({interval.level, interval.index, c});
  }
  return {{"mean", expansion.mean()}, {"depth", expansion.depth()}, {"coeffs", coeffs}};
}

HaarExpansion haar_from_json(const nlohmann::json& j) {
  HaarExpansion out(j.at("depth").get<int>(), j.at("mean").get<double>());
  for (const auto& row : j.at("coeffs")) {
    if (!row.is_array() || row.size() != 3) throw std::invalid_argument("coefficient rows are [k, m, value]");
    out.set_coefficient({row[0].get<int>(), row[1].get<std::int64_t>()}, row[2].get<double>());
  }
  return out;
}

void write_step_csv(std::ostream& out, std::span<const double> samples) {
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i) out << ',';
    out << samples[i];
  }
  out << '\n';
  out.precision(old_precision);
}

std::vector<double> read_step_csv(std::istream& in) {
  std::string line;
  std::getline(in, line);
  std::vector<double> values;
  std::stringstream row(line);
  std::string cell;
  while (std::getline(row, cell, ',')) {
    std::size_t used = 0;
    values.push_back(std::stod(cell, &used));
    if (cell.find_first_not_of(" \t\r", used) != std::string::npos) {
      throw std::invalid_argument("malformed CSV cell: " + cell);
    }
  }
  return values;
}

}  // namespace dyadiclab
