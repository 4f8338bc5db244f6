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

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace dyadiclab {

/// Which child of a dyadic interval: I₋ is the left half, I₊ the right half.
enum class Side { kMinus = -1, kPlus = +1 };

inline int sign_of(Side s) { return static_cast<int>(s); }
inline Side opposite(Side s) { return s == Side::kMinus ? Side::kPlus : Side::kMinus; }

/**
 * Node of the dyadic tree of I₀ = [0, 1): the interval
 * [index·2^-level, (index+1)·2^-level).
 *
 * Ordering is level-major, then by index. This is the ordering used for
 * every basis enumeration in the project.
 */
struct DyadicInterval {
  int level = 0;
  std::int64_t index = 0;

  static DyadicInterval root() { return {0, 0}; }
  /// The level-k interval containing x ∈ [0, 1).
  static DyadicInterval containing(int level, double x);

  bool valid() const;
  bool is_root() const { return level == 0; }
  bool is_left_child() const { return level > 0 && index % 2 == 0; }
  bool is_right_child() const { return level > 0 && index % 2 == 1; }
  /// Side of this interval within its parent; throws on the root.
  Side side() const;

  DyadicInterval parent() const;
  DyadicInterval sibling() const;
  DyadicInterval left_child() const { return {level + 1, 2 * index}; }
  DyadicInterval right_child() const { return {level + 1, 2 * index + 1}; }
  DyadicInterval child(Side s) const { return s == Side::kMinus ? left_child() : right_child(); }

  double length() const;
  double left() const;
  double right() const { return left() + length(); }
  bool contains(double x) const;
  bool contains(const DyadicInterval& other) const;

  auto operator<=>(const DyadicInterval&) const = default;
};

std::string to_string(const DyadicInterval& interval);

/**
 * Finite Haar expansion on I₀: the mean ⟨f⟩_{I₀} plus sparse coefficients
 * (f, h_I) for intervals of level < depth. The synthesized function is
 * constant on the 2^depth atoms of level `depth`.
 */
class HaarExpansion {
 public:
  explicit HaarExpansion(int depth = 0, double mean = 0.0);

  /// The unit expansion h_I, resolved at `depth` (> I.level).
  static HaarExpansion unit(const DyadicInterval& interval, int depth);

  int depth() const { return depth_; }
  double mean() const { return mean_; }
  void set_mean(double value) { mean_ = value; }

  double coefficient(const DyadicInterval& interval) const;
  /// Stores the coefficient; exact zeros are erased to keep storage sparse.
  void set_coefficient(const DyadicInterval& interval, double value);
  void add_to_coefficient(const DyadicInterval& interval, double value);
  const std::map<DyadicInterval, double>& coefficients() const { return coeffs_; }

  /// mean² + Σ coefficient², the squared L² norm on I₀.
  double squared_l2_norm() const;

  /// Same function viewed at a finer resolution.
  HaarExpansion with_depth(int depth) const;

  bool operator==(const HaarExpansion&) const = default;

 private:
  void check_interval(const DyadicInterval& interval) const;

  int depth_ = 0;
  double mean_ = 0.0;
  std::map<DyadicInterval, double> coeffs_;
};

/// h_I(x) = |I|^{-1/2}(1_{I₊} − 1_{I₋})(x); negative on the left child.
double haar_eval(const DyadicInterval& interval, double x);

/// Haar analysis of a step function given by its 2^d atom values.
HaarExpansion analyze(std::span<const double> samples);

/// mean + Σ (f, h_I) h_I(x).
double synthesize(const HaarExpansion& expansion, double x);

/// Atom values of the expansion on the level-`depth` grid (depth ≥ e.depth()).
std::vector<double> synthesize_grid(const HaarExpansion& expansion, int depth);
std::vector<double> synthesize_grid(const HaarExpansion& expansion);

/// Average of f over each level-`depth` atom, by midpoint sampling with
/// `points_per_atom` nodes. This is how arbitrary functions enter the project.
std::vector<double> average_per_atom(const std::function<double(double)>& f, int depth,
                                     int points_per_atom = 16);

/// ε_k(x): +1 iff x lies in a right child at level k + 1.
int toss(int k, double x);

/// ε_k^σ(x) = ε_k(x) if the level-k interval containing x is a σ-child, else 0.
/// Requires k ≥ 1.
int toss_signed(int k, Side sigma, double x);

/// ⟨f⟩_J computed from the coefficients of strict ancestors of J.
double average_over(const HaarExpansion& expansion, const DyadicInterval& interval);

/// d_I f = ½(⟨f⟩_{I₊} − ⟨f⟩_{I₋}).
double martingale_difference(const HaarExpansion& expansion, const DyadicInterval& interval);

/// L² inner product of two expansions on I₀.
double inner_product(const HaarExpansion& a, const HaarExpansion& b);

/// Exact L^p norm on I₀ of the step function, walking only the subtree that
/// carries coefficients. Cost is proportional to the number of stored
/// coefficients times their level.
double lp_norm(const HaarExpansion& expansion, double p);
/// L^p norm of the restriction to `within` (integral over `within` only).
double lp_norm(const HaarExpansion& expansion, double p, const DyadicInterval& within);

// Serialization: {mean, depth, coeffs: [[k, m, value], ...]}.
nlohmann::json to_json(const HaarExpansion& expansion);
HaarExpansion haar_from_json(const nlohmann::json& j);

/// Step functions are flat comma-separated rows of atom values.
void write_step_csv(std::ostream& out, std::span<const double> samples);
std::vector<double> read_step_csv(std::istream& in);

}  // namespace dyadiclab
