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

#include "dyadiclab/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace dyadiclab {

ShiftKind ShiftKind::sign_multiplier(std::map<DyadicInterval, int> signs) {
  for (const auto& [interval, s] : signs) {
    if (s != 1 && s != -1) throw std::invalid_argument("multiplier signs must be ±1");
  }
  return {Tag::kSignMultiplier, std::move(signs)};
}

int ShiftKind::sign_at(const DyadicInterval& interval) const {
  auto it = signs.find(interval);
  return it == signs.end() ? 1 : it->second;
}

std::string ShiftKind::name() const {
  switch (tag) {
    case Tag::kShift: return "shift";
    case Tag::kShiftLineTruncated: return "shift-line-truncated";
    case Tag::kClassical: return "classical";
    case Tag::kSignMultiplier: return "sign-multiplier";
    case Tag::kIdentity: return "identity";
  }
  return "unknown";
}

HaarExpansion apply_s0(const HaarExpansion& e) {
  HaarExpansion out(e.depth());
  for (const auto& [interval, c] : e.coefficients()) {
    if (interval.is_root()) continue;
    out.add_to_coefficient(interval.sibling(), interval.is_right_child() ? c : -c);
  }
  return out;
}

TruncatedImage apply_s_classical(const HaarExpansion& e) {
  TruncatedImage result{HaarExpansion(e.depth()), 0.0};
  const double w = std::numbers::sqrt2 / 2;
  for (const auto& [interval, c] : e.coefficients()) {
    if (interval.level + 1 >= e.depth()) {
      result.dropped_mass += c * c;
      continue;
    }
    result.image.add_to_coefficient(interval.right_child(), w * c);
    result.image.add_to_coefficient(interval.left_child(), -w * c);
  }
  return result;
}

HaarExpansion apply_t_alpha(const HaarExpansion& e, const std::map<DyadicInterval, int>& signs) {
  HaarExpansion out(e.depth(), e.mean());
  for (const auto& [interval, c] : e.coefficients()) {
    auto it = signs.find(interval);
    out.set_coefficient(interval, (it == signs.end() || it->second > 0) ? c : -c);
  }
  return out;
}

HaarExpansion apply(const ShiftKind& kind, const HaarExpansion& e) {
  switch (kind.tag) {
    case ShiftKind::Tag::kShift:
    case ShiftKind::Tag::kShiftLineTruncated: return apply_s0(e);
    case ShiftKind::Tag::kClassical: return apply_s_classical(e).image;
    case ShiftKind::Tag::kSignMultiplier: return apply_t_alpha(e, kind.signs);
    case ShiftKind::Tag::kIdentity: return e;
  }
  throw std::logic_error("unhandled shift kind");
}

// --- matrices ----------------------------------------------------------------

std::size_t basis_dimension(int depth) {
  if (depth < 0 || depth > 30) throw std::out_of_range("basis depth out of range");
  return std::size_t{1} << depth;
}

std::size_t basis_slot(const DyadicInterval& interval) {
  return (std::size_t{1} << interval.level) + static_cast<std::size_t>(interval.index);
}

DyadicInterval basis_interval(std::size_t slot) {
  if (slot == 0) throw std::invalid_argument("slot 0 holds the mean");
  const int level = std::bit_width(slot) - 1;
  return {level, static_cast<std::int64_t>(slot - (std::size_t{1} << level))};
}

Eigen::VectorXd to_vector(const HaarExpansion& e) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis_dimension(e.depth())));
  v[0] = e.mean();
  for (const auto& [interval, c] : e.coefficients()) v[static_cast<Eigen::Index>(basis_slot(interval))] = c;
  return v;
}

HaarExpansion from_vector(const Eigen::VectorXd& v, int depth) {
  if (static_cast<std::size_t>(v.size()) != basis_dimension(depth)) {
    throw std::invalid_argument("vector size does not match depth");
  }
  HaarExpansion e(depth, v[0]);
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v[i] != 0.0) e.set_coefficient(basis_interval(static_cast<std::size_t>(i)), v[i]);
  }
  return e;
}

OperatorMatrix as_matrix(const ShiftKind& kind, int depth) {
  if (depth < 0 || depth > 14) {
    throw std::out_of_range("matrix depth " + std::to_string(depth) + " outside [0, 14]");
  }
  const auto n = static_cast<Eigen::Index>(basis_dimension(depth));
  OperatorMatrix m{kind, depth, Eigen::MatrixXd::Zero(n, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    HaarExpansion column_input =
        j == 0 ? HaarExpansion(depth, 1.0)
               : HaarExpansion::unit(basis_interval(static_cast<std::size_t>(j)), depth);
    const HaarExpansion image = apply(kind, column_input);
    m.entries(0, j) = image.mean();
    for (const auto& [interval, c] : image.coefficients()) {
      m.entries(static_cast<Eigen::Index>(basis_slot(interval)), j) = c;
    }
  }
  return m;
}

void write_csv(std::ostream& out, const OperatorMatrix& m) {
  const auto old_precision = out.precision(17);
  out << "# kind=" << m.kind.name() << " depth=" << m.depth << '\n';
  for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.entries.cols(); ++j) {
      if (j) out << ',';
      out << m.entries(i, j);
    }
    out << '\n';
  }
  out.precision(old_precision);
}

// --- four-arc projection -----------------------------------------------------

int arc_slot(double theta) {
  constexpr double pi = std::numbers::pi;
  const double t = theta - 2 * pi * std::floor((theta + pi) / (2 * pi));
  const int slot = static_cast<int>(std::floor((t + pi) / (pi / 2)));
  return std::clamp(slot, 0, 3);
}

ArcStep project_four_arcs(const FourierSeries& f) {
  constexpr double quarter = std::numbers::pi / 2;
  ArcStep out;
  for (std::size_t s = 0; s < 4; ++s) {
    const double a = kArcIndices[s] * quarter;
    const double b = a + quarter;
    Complex avg = f.coefficient(0);
    for (int n = 1; n <= f.bandwidth(); ++n) {
      for (int k : {n, -n}) {
        const Complex i_k(0.0, k);
        avg += f.coefficient(k) * (std::exp(i_k * b) - std::exp(i_k * a)) / (i_k * quarter);
      }
    }
    out.values[s] = avg.real();
  }
  return out;
}

ArcStep project_four_arcs(const std::function<double(double)>& f, int points_per_arc) {
  if (points_per_arc < 1) throw std::invalid_argument("points_per_arc must be positive");
  constexpr double quarter = std::numbers::pi / 2;
  ArcStep out;
  for (std::size_t s = 0; s < 4; ++s) {
    const double a = kArcIndices[s] * quarter;
    double sum = 0.0;
    for (int q = 0; q < points_per_arc; ++q) sum += f(a + (q + 0.5) * quarter / points_per_arc);
    out.values[s] = sum / points_per_arc;
  }
  return out;
}

double inner_product(const ArcStep& a, const ArcStep& b) {
  double sum = 0.0;
  for (std::size_t s = 0; s < 4; ++s) sum += a.values[s] * b.values[s];
  return sum / 4;
}

}  // namespace dyadiclab
