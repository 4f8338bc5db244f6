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

#include "dyadiclab/dyadic.hpp"

#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

namespace dyadiclab {

namespace {

constexpr int kMaxLevel = 62;

// Index of the level-k atom containing x. ldexp and floor are exact on
// doubles, so dyadic points never land on the wrong side of a border.
std::int64_t atom_index(int level, double x) {
  return static_cast<std::int64_t>(std::floor(std::ldexp(x, level)));
}

void check_point(double x) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw std::domain_error("point outside [0, 1): " + std::to_string(x));
  }
}

}  // namespace

DyadicInterval DyadicInterval::containing(int level, double x) {
  if (level < 0 || level > kMaxLevel) throw std::out_of_range("dyadic level out of range");
  check_point(x);
  return {level, atom_index(level, x)};
}

bool DyadicInterval::valid() const {
  return level >= 0 && level <= kMaxLevel && index >= 0 &&
         index < (std::int64_t{1} << level);
}

Side DyadicInterval::side() const {
  if (is_root()) throw std::logic_error("the root interval is neither a left nor a right child");
  return is_left_child() ? Side::kMinus : Side::kPlus;
}

DyadicInterval DyadicInterval::parent() const {
  if (is_root()) throw std::logic_error("the root interval has no parent");
  return {level - 1, index / 2};
}

DyadicInterval DyadicInterval::sibling() const {
  if (is_root()) throw std::logic_error("the root interval has no sibling");
  return {level, index ^ 1};
}

double DyadicInterval::length() const { return std::ldexp(1.0, -level); }

double DyadicInterval::left() const { return std::ldexp(static_cast<double>(index), -level); }

bool DyadicInterval::contains(double x) const {
  if (!(x >= 0.0 && x < 1.0)) return false;
  return atom_index(level, x) == index;
}

bool DyadicInterval::contains(const DyadicInterval& other) const {
  if (other.level < level) return false;
  return (other.index >> (other.level - level)) == index;
}

std::string to_string(const DyadicInterval& interval) {
  return "(" + std::to_string(interval.level) + "," + std::to_string(interval.index) + ")";
}

// --- HaarExpansion ---------------------------------------------------------

HaarExpansion::HaarExpansion(int depth, double mean) : depth_(depth), mean_(mean) {
  if (depth < 0 || depth > kMaxLevel) throw std::invalid_argument("invalid expansion depth");
}

HaarExpansion HaarExpansion::unit(const DyadicInterval& interval, int depth) {
  HaarExpansion e(depth);
  e.set_coefficient(interval, 1.0);
  return e;
}

void HaarExpansion::check_interval(const DyadicInterval& interval) const {
  if (!interval.valid()) throw std::invalid_argument("invalid dyadic interval " + to_string(interval));
  if (interval.level >= depth_) {
    throw std::out_of_range("interval " + to_string(interval) + " not resolved at depth " +
                            std::to_string(depth_));
  }
}

double HaarExpansion::coefficient(const DyadicInterval& interval) const {
  auto it = coeffs_.find(interval);
  return it == coeffs_.end() ? 0.0 : it->second;
}

void HaarExpansion::set_coefficient(const DyadicInterval& interval, double value) {
  check_interval(interval);
  if (value == 0.0) {
    coeffs_.erase(interval);
  } else {
    coeffs_[interval] = value;
  }
}

void HaarExpansion::add_to_coefficient(const DyadicInterval& interval, double value) {
  set_coefficient(interval, coefficient(interval) + value);
}

double HaarExpansion::squared_l2_norm() const {
  double sum = mean_ * mean_;
  for (const auto& [interval, c] : coeffs_) sum += c * c;
  return sum;
}

HaarExpansion HaarExpansion::with_depth(int depth) const {
  HaarExpansion out(depth, mean_);
  for (const auto& [interval, c] : coeffs_) out.set_coefficient(interval, c);
  return out;
}

// --- Haar functions and transforms -----------------------------------------

double haar_eval(const DyadicInterval& interval, double x) {
  if (!interval.contains(x)) return 0.0;
  const double scale = std::ldexp(1.0, interval.level);  // |I|^{-1}
  const double amplitude = std::sqrt(scale);
  const bool right = (atom_index(interval.level + 1, x) & 1) != 0;
  return right ? amplitude : -amplitude;
}

HaarExpansion analyze(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n == 0 || !std::has_single_bit(n)) {
    throw std::invalid_argument("sample count must be a power of two, got " + std::to_string(n));
  }
  const int depth = std::countr_zero(n);
  HaarExpansion out(depth);
  std::vector<double> averages(samples.begin(), samples.end());
  for (int level = depth - 1; level >= 0; --level) {
    const std::size_t count = std::size_t{1} << level;
    const double sqrt_length = std::sqrt(std::ldexp(1.0, -level));
    for (std::size_t m = 0; m < count; ++m) {
      const double left = averages[2 * m];
      const double right = averages[2 * m + 1];
      // (f, h_I) = |I|^{1/2} · ½(⟨f⟩_{I₊} − ⟨f⟩_{I₋})
      const double c = sqrt_length * 0.5 * (right - left);
      if (c != 0.0) out.set_coefficient({level, static_cast<std::int64_t>(m)}, c);
      averages[m] = 0.5 * (left + right);
    }
  }
  out.set_mean(averages[0]);
  return out;
}

double synthesize(const HaarExpansion& expansion, double x) {
  double value = expansion.mean();
  for (const auto& [interval, c] : expansion.coefficients()) value += c * haar_eval(interval, x);
  return value;
}

std::vector<double> synthesize_grid(const HaarExpansion& expansion, int depth) {
  if (depth < expansion.depth()) throw std::invalid_argument("grid coarser than the expansion");
  if (depth > 30) throw std::invalid_argument("grid too fine to synthesize densely");
  std::vector<double> values(std::size_t{1} << depth, 0.0);
  values[0] = expansion.mean();
  for (int level = 0; level < depth; ++level) {
    const std::size_t count = std::size_t{1} << level;
    const double amplitude = std::sqrt(std::ldexp(1.0, level));
    // Expand in place from the back so parents are read before being overwritten.
    for (std::size_t m = count; m-- > 0;) {
      const double v = values[m];
      const double c = expansion.coefficient({level, static_cast<std::int64_t>(m)});
      values[2 * m] = v - c * amplitude;
      values[2 * m + 1] = v + c * amplitude;
    }
  }
  return values;
}

std::vector<double> synthesize_grid(const HaarExpansion& expansion) {
  return synthesize_grid(expansion, expansion.depth());
}

std::vector<double> average_per_atom(const std::function<double(double)>& f, int depth,
                                     int points_per_atom) {
  if (points_per_atom < 1) throw std::invalid_argument("points_per_atom must be positive");
  const std::size_t n = std::size_t{1} << depth;
  const double width = std::ldexp(1.0, -depth);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int q = 0; q < points_per_atom; ++q) {
      sum += f((static_cast<double>(i) + (q + 0.5) / points_per_atom) * width);
    }
    out[i] = sum / points_per_atom;
  }
  return out;
}

// --- tosses ------------------------------------------------------------------

int toss(int k, double x) {
  if (k < 0) throw std::invalid_argument("toss generation must be non-negative");
  check_point(x);
  return (atom_index(k + 1, x) & 1) ? +1 : -1;
}

int toss_signed(int k, Side sigma, double x) {
  if (k < 1) throw std::invalid_argument("no left or right toss at generation 0");
  check_point(x);
  const bool right_child = (atom_index(k, x) & 1) != 0;
  const Side here = right_child ? Side::kPlus : Side::kMinus;
  return here == sigma ? toss(k, x) : 0;
}

// --- averages and differences ------------------------------------------------

double average_over(const HaarExpansion& expansion, const DyadicInterval& interval) {
  if (!interval.valid()) throw std::invalid_argument("invalid dyadic interval");
  double value = expansion.mean();
  DyadicInterval node = interval;
  while (!node.is_root()) {
    const DyadicInterval up = node.parent();
    const double c = expansion.coefficient(up);
    if (c != 0.0) {
      const double amplitude = std::sqrt(std::ldexp(1.0, up.level));
      value += node.is_right_child() ? c * amplitude : -c * amplitude;
    }
    node = up;
  }
  return value;
}

double martingale_difference(const HaarExpansion& expansion, const DyadicInterval& interval) {
  if (interval.level >= expansion.depth()) {
    throw std::out_of_range("martingale difference requested below the expansion depth");
  }
  return 0.5 * (average_over(expansion, interval.right_child()) -
                average_over(expansion, interval.left_child()));
}

double inner_product(const HaarExpansion& a, const HaarExpansion& b) {
  double sum = a.mean() * b.mean();
  const auto& small = a.coefficients().size() <= b.coefficients().size() ? a : b;
  const auto& large = &small == &a ? b : a;
  for (const auto& [interval, c] : small.coefficients()) sum += c * large.coefficient(interval);
  return sum;
}

double lp_norm(const HaarExpansion& expansion, double p) {
  return lp_norm(expansion, p, DyadicInterval::root());
}

double lp_norm(const HaarExpansion& expansion, double p, const DyadicInterval& within) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
  if (!within.valid()) throw std::invalid_argument("invalid dyadic interval");
  // Intervals whose value is not constant: those carrying coefficients and their ancestors.
  std::set<DyadicInterval> split;
  for (const auto& [interval, c] : expansion.coefficients()) {
    DyadicInterval node = interval;
    while (split.insert(node).second && !node.is_root()) node = node.parent();
  }
  double sum = 0.0;
  std::vector<std::pair<DyadicInterval, double>> stack{{DyadicInterval::root(), expansion.mean()}};
  while (!stack.empty()) {
    auto [node, value] = stack.back();
    stack.pop_back();
    const bool inside = within.contains(node);
    if (!inside && !node.contains(within)) continue;
    if (!split.contains(node)) {
      sum += std::pow(std::abs(value), p) * (inside ? node.length() : within.length());
      continue;
    }
    const double step = expansion.coefficient(node) * std::sqrt(std::ldexp(1.0, node.level));
    stack.emplace_back(node.left_child(), value - step);
    stack.emplace_back(node.right_child(), value + step);
  }
  return std::pow(sum, 1.0 / p);
}

}  // namespace dyadiclab
