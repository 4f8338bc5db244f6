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

#include "dyadiclab/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace dyadiclab {

namespace {

std::int64_t cell(double u, int level) {
  return static_cast<std::int64_t>(std::floor(std::ldexp(u, level)));
}

double select(const KernelTerm& term, KernelPart part) {
  switch (part) {
    case KernelPart::kFull:
      return term.value;
    case KernelPart::kMinus:
      return term.t_in_right ? term.value : 0.0;
    case KernelPart::kPlus:
      return term.t_in_right ? 0.0 : term.value;
    case KernelPart::kEven:
      return term.t_in_right ? term.value : -term.value;
  }
  return 0.0;
}

// Σ_{j≥0} 2d/(L·2^j)², the translation average of all scales of length ≥ L ≥ 4|d|.
// There t always lies left of x, so the term belongs to K₊ when d > 0 and to K₋ otherwise.
double coarse_tail(double d, double length, KernelPart part) {
  const double full = 2.0 * d / (length * length) * 4.0 / 3.0;
  switch (part) {
    case KernelPart::kFull:
      return full;
    case KernelPart::kMinus:
      return d < 0 ? full : 0.0;
    case KernelPart::kPlus:
      return d > 0 ? full : 0.0;
    case KernelPart::kEven:
      return -std::abs(full);
  }
  return 0.0;
}

}  // namespace

KernelTerm kernel_term(double t, double x, const GridParams& params) {
  if (t == x) throw std::domain_error("kernel evaluated on the diagonal");
  if (!(params.r > 0.0)) throw std::invalid_argument("dilation must be positive");
  const double u = (t - params.alpha) / params.r;
  const double v = (x - params.alpha) / params.r;
  KernelTerm term;
  // Dyadic intervals of ℝ never straddle 0.
  if ((u < 0) != (v < 0)) return term;
  int level = static_cast<int>(std::floor(-std::log2(std::abs(u - v)))) + 1;
  while (cell(u, level) != cell(v, level)) --level;
  term.separated = true;
  term.level = level;
  term.length = std::ldexp(params.r, -level);
  term.t_in_right = (cell(u, level + 1) & 1) != 0;
  const int sign_t = (cell(u, level + 2) & 1) ? 1 : -1;
  const int sign_x = (cell(v, level + 2) & 1) ? 1 : -1;
  // Product of two Haar amplitudes on the children, each of length |I|/2.
  const double amplitude = 2.0 / term.length;
  term.value = (term.t_in_right ? 1.0 : -1.0) * sign_t * sign_x * amplitude;
  return term;
}

double kernel_value(double t, double x, const GridParams& params, KernelPart part) {
  return select(kernel_term(t, x, params), part);
}

TranslationAverage average_translations(double t, double x, double r, KernelPart part,
                                        int window_doublings) {
  if (!(r >= 1.0 && r < 2.0)) throw std::invalid_argument("dilation must lie in [1, 2)");
  if (window_doublings < 0 || window_doublings > 12) {
    throw std::invalid_argument("window_doublings must lie in [0, 12]");
  }
  const double d = x - t;
  if (d == 0.0) throw std::domain_error("translation average on the diagonal");
  // Coarsest level whose intervals are shorter than 4|d|.
  const int base_level = static_cast<int>(std::floor(std::log2(r / (4 * std::abs(d))))) + 1;
  const int window_level = base_level - window_doublings;
  const double window = std::ldexp(r, -window_level);
  // Every contributing interval is longer than |d| > window/2^{doublings+3}; its
  // quarter-points are multiples of q, and the kernel is constant between them.
  const double q = std::ldexp(r, -(base_level + 4));
  std::vector<double> cuts{0.0, window};
  for (double p : {t, x}) {
    const double offset = p - q * std::floor(p / q);
    for (double a = offset; a < window; a += q) cuts.push_back(a);
  }
  std::sort(cuts.begin(), cuts.end());
  TranslationAverage out;
  out.window = window;
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double width = cuts[i + 1] - cuts[i];
    if (width <= 0.0) continue;
    const KernelTerm term = kernel_term(t, x, {r, 0.5 * (cuts[i] + cuts[i + 1])});
    ++out.cells;
    if (!term.separated || term.level < window_level) continue;
    integral += width * select(term, part);
  }
  out.value = integral / window + coarse_tail(d, 2 * window, part);
  return out;
}

double average_full(double t, double x, int resolution, KernelPart part) {
  if (resolution < 1) throw std::invalid_argument("resolution must be positive");
  double sum = 0.0;
  for (int j = 0; j < resolution; ++j) {
    const double r = std::exp2((j + 0.5) / resolution);
    sum += average_translations(t, x, r, part).value;
  }
  return sum / resolution;
}

std::vector<HomogeneityRow> homogeneity_check(const std::vector<double>& separations,
                                              const std::vector<double>& dilations) {
  constexpr double t = 0.1;
  std::vector<HomogeneityRow> rows;
  for (double s : separations) {
    if (!(s > 0.0)) throw std::invalid_argument("separations must be positive");
    for (double r : dilations) {
      HomogeneityRow row;
      row.separation = s;
      row.r = r;
      row.at_s = average_translations(t, t + s, r).value;
      row.at_2s = average_translations(t, t + 2 * s, r).value;
      row.ratio = row.at_s / row.at_2s;
      row.antisymmetry_defect = std::abs(row.at_s + average_translations(t + s, t, r).value);
      rows.push_back(row);
    }
  }
  return rows;
}

AverageRow average_row(double t, double x, int resolution) {
  AverageRow row;
  row.t = t;
  row.x = x;
  row.r_points = resolution;
  double sum = 0.0;
  for (int j = 0; j < resolution; ++j) {
    const auto avg = average_translations(t, x, std::exp2((j + 0.5) / resolution));
    sum += avg.value;
    row.alpha_points += avg.cells;
  }
  row.average = sum / resolution;
  row.single_grid_scale = 1.0 / std::abs(t - x);
  row.ratio = row.average / row.single_grid_scale;
  return row;
}

void write_csv(std::ostream& out, const std::vector<AverageRow>& rows) {
  out << "t,x,r_points,alpha_points,average,single_grid_scale,ratio\n";
  out << std::setprecision(17);
  for (const auto& r : rows) {
    out << r.t << ',' << r.x << ',' << r.r_points << ',' << r.alpha_points << ',' << r.average
        << ',' << r.single_grid_scale << ',' << r.ratio << '\n';
  }
}

}  // namespace dyadiclab
