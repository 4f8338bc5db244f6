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
#include <cstdint>
#include <vector>

#include "dyadiclab/dyadic.hpp"
#include "dyadiclab/operators.hpp"

namespace dyadiclab {

/// Partial sum Σ_{k<terms} (−1)^k/(2k+1)² of the Catalan series.
double catalan_partial_sum(int terms);

/// Catalan's constant by the Cohen–Rodriguez Villegas–Zagier acceleration of
/// the alternating series, with enough terms for the requested absolute error.
double catalan_constant(double tolerance = 1e-15);

/// 8G/π².
double c0_constant();

/**
 * c₀ as minus the mean of (2/π) log tan(x/2) over (0, π/2), by midpoint rule
 * after subtracting the log(x/2) singularity (integrated exactly).
 * Requires resolution ≥ 2^10.
 */
double c0_via_quadrature(int resolution);

/// Arc averages of Hφ^σ: (1/2π)∫₀^π cot(s/2) D(s) ds where D is the arc
/// average of φ^σ(x−s) − φ^σ(x+s), evaluated exactly from the antiderivative
/// of φ^σ; midpoint rule in s with `resolution` cells.
ArcStep hilbert_phi_arc_averages(Side sign, int resolution);

/// The shift on trigonometric tosses: S₀φ^σ = σ·φ^{−σ}. Returns (σ, −σ).
std::pair<int, Side> shift_generator(Side sign);

struct ProjectionReport {
  Side sign = Side::kPlus;
  int resolution = 0;
  ArcStep computed;
  ArcStep expected;  // c₀ times the arc values of S₀φ^σ
  double max_error = 0.0;
};

ProjectionReport projection_lemma_check(Side sign, int resolution);

struct OrthogonalityEntry {
  Side sign = Side::kPlus;   // σ in Hφ^σ
  Side test = Side::kPlus;   // η in φ^η
  double computed = 0.0;     // mean of Hφ^σ · φ^η
  double reference = 0.0;    // c₀ · mean of S₀φ^σ · φ^η
};

/// All four (σ, η) pairings.
std::vector<OrthogonalityEntry> dualized_orthogonality_check(int resolution);

/**
 * Spectral bounds N₀..N_{K−1} and modulation frequencies n₀..n_K.
 */
struct ModulationPlan {
  std::vector<std::int64_t> spectral_bounds;
  std::vector<std::int64_t> frequencies;
};

/// n₀ = 1, n_k = 2·N_{k−1}·n_{k−1}; overflow of int64 is rejected.
ModulationPlan build_modulation(const std::vector<std::int64_t>& spectral_bounds);

/// Same recursion with factor 1 instead of 2: the boundary case that fails.
ModulationPlan build_boundary_modulation(const std::vector<std::int64_t>& spectral_bounds);

/**
 * Exhaustive check that sign(l⃗·n⃗_{k−1} + l_k n_k) = sign(l_k n_k) for all
 * l⃗ ∈ ℤ^k with ‖l⃗‖₁ ≤ N_{k−1} and 0 < |l_k| ≤ N_{k−1} + 1. Larger |l_k|
 * cannot break the inequality once |l_k| = 1 satisfies it.
 * Rejects enumerations above 10^8 tuples.
 */
bool verify_sign_domination(const ModulationPlan& plan, int k);

/// Number of tuples the check for step k visits.
std::int64_t sign_domination_tuple_count(const ModulationPlan& plan, int k);

}  // namespace dyadiclab
