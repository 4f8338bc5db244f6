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

#include <array>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "dyadiclab/dyadic.hpp"
#include "dyadiclab/fourier.hpp"

namespace dyadiclab {

/// Which operator a matrix or generic application refers to.
struct ShiftKind {
  enum class Tag { kShift, kShiftLineTruncated, kClassical, kSignMultiplier, kIdentity };

  Tag tag = Tag::kShift;
  /// Signs of the multiplier; unlisted intervals carry +1.
  std::map<DyadicInterval, int> signs;

  static ShiftKind shift() { return {Tag::kShift, {}}; }
  static ShiftKind shift_line_truncated() { return {Tag::kShiftLineTruncated, {}}; }
  static ShiftKind classical() { return {Tag::kClassical, {}}; }
  static ShiftKind sign_multiplier(std::map<DyadicInterval, int> signs);
  static ShiftKind identity() { return {Tag::kIdentity, {}}; }

  int sign_at(const DyadicInterval& interval) const;
  std::string name() const;
};

/// h_{I₊} ↦ +h_{I₋}, h_{I₋} ↦ −h_{I₊}; the mean and the root coefficient go to 0.
HaarExpansion apply_s0(const HaarExpansion& e);

struct TruncatedImage {
  HaarExpansion image;
  /// Squared L² mass of the coefficients pushed below the expansion depth.
  double dropped_mass = 0.0;
};

/// h_I ↦ (h_{I₊} − h_{I₋})/√2. The mean is sent to 0.
TruncatedImage apply_s_classical(const HaarExpansion& e);

/// h_I ↦ α_I h_I; the mean is unchanged.
HaarExpansion apply_t_alpha(const HaarExpansion& e, const std::map<DyadicInterval, int>& signs);

/// Dispatch on the kind. The truncated line shift acts on I₀ like apply_s0:
/// pairs that straddle the truncation boundary are dropped.
HaarExpansion apply(const ShiftKind& kind, const HaarExpansion& e);

/**
 * Coefficient basis used by every matrix in the project: slot 0 is the mean,
 * slot 1 the root coefficient, then intervals of levels 1..depth−1 in
 * (level, index) order. Dimension 2^depth.
 */
std::size_t basis_dimension(int depth);
std::size_t basis_slot(const DyadicInterval& interval);
DyadicInterval basis_interval(std::size_t slot);  // slot ≥ 1
Eigen::VectorXd to_vector(const HaarExpansion& e);
HaarExpansion from_vector(const Eigen::VectorXd& v, int depth);

struct OperatorMatrix {
  ShiftKind kind;
  int depth = 0;
  Eigen::MatrixXd entries;
};

/// Dense matrix whose columns are the images of the basis expansions.
/// Depths above 14 are rejected.
OperatorMatrix as_matrix(const ShiftKind& kind, int depth);

/// Dense CSV with a "# kind=<name> depth=<d>" header line.
void write_csv(std::ostream& out, const OperatorMatrix& m);

/// Arcs A_i = [iπ/2, iπ/2 + π/2) for i = −2, −1, 0, 1, covering [−π, π).
constexpr std::array<int, 4> kArcIndices = {-2, -1, 0, 1};
/// Position of θ (taken mod 2π) among the four arcs, 0..3.
int arc_slot(double theta);

/// Four arc averages, stored in the order A₋₂, A₋₁, A₀, A₁.
struct ArcStep {
  std::array<double, 4> values{};
  double operator()(double theta) const { return values[static_cast<std::size_t>(arc_slot(theta))]; }
};

/// Arc averages of a series, computed exactly from its coefficients.
ArcStep project_four_arcs(const FourierSeries& f);
/// Arc averages of a sampled function by midpoint rule with `points_per_arc` nodes.
ArcStep project_four_arcs(const std::function<double(double)>& f, int points_per_arc);

/// (1/2π)∫ of the product of two arc step functions.
double inner_product(const ArcStep& a, const ArcStep& b);

/**
 * Comparison between the shift on I₀ and the shift on an ancestor J of I₀ of
 * height `levels_above`, with I₀ the leftmost descendant of J. All norms are
 * in the original length units (|I₀| = 1).
 */
struct LineConsistencyReport {
  int levels_above = 0;
  double p = 2.0;
  /// ‖(S₀ on J of the corrected embedding) − (S₀ on I₀ of f)‖ restricted to I₀.
  double restriction_defect = 0.0;
  /// ‖f − f̃‖ on J where f̃ = f − ⟨f⟩_J 1_J − (f, h_J) h_J.
  double embedding_defect = 0.0;
  /// ‖S₀ f‖ outside J for the shift on the whole line (sum over the ancestors of J).
  double line_tail = 0.0;
  /// embedding_defect + line_tail; bounds the gap between the three norm ratios.
  double discrepancy = 0.0;
  double interval_norm = 0.0;  // ‖S₀ f‖ on I₀
  double embedded_norm = 0.0;  // ‖S₀ f̃‖ on J
};

LineConsistencyReport s0_line_vs_interval_consistency(const HaarExpansion& f, int levels_above,
                                                      double p = 2.0);

}  // namespace dyadiclab
