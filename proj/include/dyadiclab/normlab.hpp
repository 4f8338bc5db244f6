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

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dyadiclab/dyadic.hpp"
#include "dyadiclab/operators.hpp"

namespace dyadiclab {

/// Largest singular value of as_matrix(kind, depth). Requires depth ≤ 12.
double norm_p2_exact(const ShiftKind& kind, int depth);

struct NormOptions {
  int restarts = 32;
  int max_iterations = 4000;
  double initial_step = 0.5;
  /// A restart has converged once its step has been halved below this.
  double min_step = 1e-10;
  unsigned workers = 1;
};

struct NormEstimate {
  double p = 2.0;
  int depth = 0;
  /// ‖Op(witness)‖_p / ‖witness‖_p, recomputed from the witness alone.
  double value = 0.0;
  HaarExpansion witness;
  /// Total ascent iterations over all restarts.
  long iterations = 0;
  int restarts = 0;
  /// Restarts that stopped on max_iterations instead of on min_step.
  int unconverged = 0;
  /// Best value after each restart, in restart order; non-decreasing.
  std::vector<double> best_after_restart;
};

/**
 * Lower bound for ‖Op‖_{p→p} on functions constant on the 2^depth atoms, by
 * normalized gradient ascent on ‖Op f‖_p/‖f‖_p with step halving. Restart i
 * starts from Gaussian atom values drawn from (seed, i); the expansions in
 * `starts`, if any, are used as extra restarts placed first. The search runs
 * over all step functions, kernel directions included: for p ≠ 2 a mean or
 * root component can lower ‖f‖_p without changing the image.
 * Requires p > 1 and 1 ≤ depth ≤ 14.
 */
NormEstimate norm_lp_lower_bound(const ShiftKind& kind, double p, int depth,
                                 const NormOptions& options, std::uint64_t seed,
                                 const std::vector<HaarExpansion>& starts = {});

/// ‖Op w‖_p / ‖w‖_p evaluated through the sparse expansion routines.
double witness_ratio(const ShiftKind& kind, const HaarExpansion& witness, double p);

/// The dual witness |Op w|^{p−2} Op w as a step function at the witness depth.
HaarExpansion dual_witness(const ShiftKind& kind, const HaarExpansion& witness, double p);

/// The same function resolved at depth + 1.
HaarExpansion refine(const HaarExpansion& witness);

/**
 * Bounds at p and at the conjugate exponent p′. Each side is first searched
 * on its own, then reseeded with the dual witness of the other side; for S₀,
 * which is antisymmetric, the dual witness certifies the same ratio.
 */
struct DualityReport {
  NormEstimate primal;  // at p
  NormEstimate dual;    // at p′
  double independent_primal = 0.0;
  double independent_dual = 0.0;
  /// |primal − dual| / max(primal, dual) after reseeding.
  double relative_gap = 0.0;
};

/// `dual_restarts` random restarts are used at the exponent below 2, where ascent is slow.
DualityReport duality_check(const ShiftKind& kind, double p, int depth, const NormOptions& options,
                            std::uint64_t seed, int dual_restarts = 4);

struct SandwichRow {
  double p = 2.0;
  int depth = 0;
  double h_p = 0.0;
  double lb_s_p = 0.0;
  double ceiling = 0.0;  // c₀⁻¹h_p
  double gap = 0.0;      // h_p − lb_s_p, reported only
  int restarts = 0;
  long iterations = 0;
  bool consistent = false;  // lb_s_p ≤ ceiling + 1e-9
};

SandwichRow sandwich_row(const NormEstimate& estimate);

/// lb(s_p) for S₀ at one depth, with the ceiling check.
SandwichRow sandwich_report(double p, int depth, const NormOptions& options, std::uint64_t seed);

/**
 * lb(s_p) for S₀ over exponents × increasing depths. At each depth the
 * search is seeded with the refined witness of the previous depth, and
 * conjugate exponents in the list seed each other with dual witnesses.
 * Exponents below 2 get `slow_restarts` random restarts.
 */
struct SandwichTable {
  std::vector<SandwichRow> rows;  // depth-major, exponents in list order
  std::vector<NormEstimate> estimates;
  bool consistent = true;  // every row under its ceiling
  /// lb at depth d+1 ≥ lb at depth d − 1e-12 for every exponent.
  bool monotone_in_depth = true;
  /// Largest relative gap between conjugate exponents at matched depth.
  double max_duality_gap = 0.0;
};

SandwichTable sandwich_table(const std::vector<double>& exponents, const std::vector<int>& depths,
                             const NormOptions& options, std::uint64_t seed, int slow_restarts = 4);

void write_csv(std::ostream& out, const std::vector<SandwichRow>& rows);

}  // namespace dyadiclab
