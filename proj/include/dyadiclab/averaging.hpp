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

#include <iosfwd>
#include <vector>

namespace dyadiclab {

/// The grid r·𝒟 + α of dyadic intervals of ℝ, dilated by r ∈ [1, 2) and translated by α.
struct GridParams {
  double r = 1.0;
  double alpha = 0.0;
};

/// K₀ = K₋ + K₊, with K₋ = Σ h_{I₊}(t)h_{I₋}(x) and K₊ = Σ −h_{I₋}(t)h_{I₊}(x).
/// kEven is K₋ − K₊.
enum class KernelPart { kFull, kMinus, kPlus, kEven };

/// The single contributing term of the kernel at (t, x).
struct KernelTerm {
  double value = 0.0;
  bool separated = false;  // false when no grid interval contains both points
  int level = 0;           // the separating interval is r·[m, m+1)·2^-level + α
  double length = 0.0;
  bool t_in_right = false;
};

/// Finds the smallest grid interval containing t and x; t = x is rejected.
KernelTerm kernel_term(double t, double x, const GridParams& params);

double kernel_value(double t, double x, const GridParams& params,
                    KernelPart part = KernelPart::kFull);

struct TranslationAverage {
  double value = 0.0;
  long cells = 0;  // α cells integrated exactly over the periodic window
  double window = 0.0;
};

/**
 * lim_R (1/2R)∫_{−R}^{R} K^{α,r}(t, x) dα.
 *
 * Scales of length < 4|t−x| are integrated exactly over a window that is a
 * common period of all of them (the kernel is piecewise constant in α). The
 * window may be enlarged by `window_doublings`. Coarser scales each
 * contribute 2(x−t)/L², summed in closed form.
 */
TranslationAverage average_translations(double t, double x, double r,
                                        KernelPart part = KernelPart::kFull,
                                        int window_doublings = 0);

/// (1/log 2)∫₁² (translation average) dr/r, midpoint rule in u = log₂ r.
double average_full(double t, double x, int resolution, KernelPart part = KernelPart::kFull);

struct HomogeneityRow {
  double separation = 0.0;
  double r = 0.0;
  double at_s = 0.0;
  double at_2s = 0.0;
  double ratio = 0.0;                // at_s / at_2s, 2 for homogeneity −1
  double antisymmetry_defect = 0.0;  // |A(t, x) + A(x, t)| at separation s
};

/// Translation averages at separations s and 2s for each r.
std::vector<HomogeneityRow> homogeneity_check(const std::vector<double>& separations,
                                              const std::vector<double>& dilations);

struct AverageRow {
  double t = 0.0;
  double x = 0.0;
  int r_points = 0;
  long alpha_points = 0;
  double average = 0.0;
  double single_grid_scale = 0.0;  // 1/|t − x|
  double ratio = 0.0;              // average / single_grid_scale
};

AverageRow average_row(double t, double x, int resolution);

void write_csv(std::ostream& out, const std::vector<AverageRow>& rows);

}  // namespace dyadiclab
